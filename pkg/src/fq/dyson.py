"""Dyson's groups L(A): two lamplighters glued along the lamps indexed by A.

L = Z wr Z/2 is generated by a (the shift) and e (the lamp at 0); a second
copy is generated by ah and eh.  L(A) identifies u_j = a^j e a^-j with its
hat copy for every j in A.  An element of L is stored as a pair
(shift, set of lit lamps), meaning a^shift times the product of the u_i.

Words use generator indices 1..4 for (a, ah, e, eh).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .core.presentation import Presentation
from .core.verdict import Budget, Outcome, Verdict
from .core.words import Word, commutator, free_reduce
from .finite.cayley import MarkedGroup, evaluate_word, is_marked_quotient
from .finite.census import DEFAULT_CAP
from .profinite.oracle import ZSetOracle
from .quotients import iter_marked_quotients

GENERATORS = ("a", "ah", "e", "eh")
A, AH, E, EH = 1, 2, 3, 4
PLAIN, HAT = "plain", "hat"


class DysonError(ValueError):
    pass


class OracleUnknown(DysonError):
    """The set oracle could not decide a lamp index the computation needs."""

    def __init__(self, index: int):
        super().__init__(f"membership of {index} is undecided")
        self.index = index


class ModUnknown(DysonError):
    def __init__(self, n: int, undecided: Sequence[int] = ()):
        super().__init__(f"A mod {n} is not known exactly")
        self.n = n
        self.undecided = tuple(undecided)


class NoWitness(DysonError):
    def __init__(self, index: int):
        super().__init__(f"no separating modulus is known for lamp index {index}")
        self.index = index


class PreconditionViolated(DysonError):
    pass


# -- lamplighter arithmetic -------------------------------------------------------

@dataclass(frozen=True)
class Lamp:
    shift: int = 0
    lamps: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "lamps", frozenset(int(i) for i in self.lamps))

    @property
    def is_identity(self) -> bool:
        return self.shift == 0 and not self.lamps

    def to_dict(self) -> dict:
        return {"shift": self.shift, "lamps": sorted(self.lamps)}


IDENTITY = Lamp()


def lamp_mul(g: Lamp, h: Lamp, modulus: Optional[int] = None) -> Lamp:
    """(alpha, S)(beta, T) = (alpha + beta, (S - beta) ^ T)."""
    moved = {i - h.shift for i in g.lamps}
    shift = g.shift + h.shift
    if modulus is not None:
        moved = {i % modulus for i in moved}
        shift %= modulus
    return Lamp(shift, frozenset(moved) ^ h.lamps)


def lamp_inv(g: Lamp, modulus: Optional[int] = None) -> Lamp:
    lamps = {i + g.shift for i in g.lamps}
    shift = -g.shift
    if modulus is not None:
        lamps = {i % modulus for i in lamps}
        shift %= modulus
    return Lamp(shift, frozenset(lamps))


def house(i: int) -> Lamp:
    """u_i, the single lamp at position i."""
    return Lamp(0, frozenset({i}))


def _letter_lamp(letter: int) -> tuple[str, Lamp]:
    i = abs(letter)
    if i not in (A, AH, E, EH):
        raise ValueError(f"letter {letter} is not one of a, ah, e, eh")
    factor = PLAIN if i in (A, E) else HAT
    if i in (A, AH):
        return factor, Lamp(1 if letter > 0 else -1)
    return factor, house(0)  # e is an involution


def evaluate_lamp(w: Sequence[int], modulus: Optional[int] = None) -> Lamp:
    """Value of a word in a and e (or ah and eh) alone."""
    x = IDENTITY
    for letter in w:
        x = lamp_mul(x, _letter_lamp(letter)[1], modulus)
    return x


def lamp_word(g: Lamp, factor: str = PLAIN) -> Word:
    """A word for g: the lit houses a^i e a^-i in increasing order, then a^shift."""
    a, e = (A, E) if factor == PLAIN else (AH, EH)
    out: list[int] = []
    # g = a^shift u_S = (prod u_{i+shift}) a^shift
    for i in sorted(g.lamps):
        j = i + g.shift
        out += [a if j > 0 else -a] * abs(j) + [e] + [-a if j > 0 else a] * abs(j)
    out += [a if g.shift > 0 else -a] * abs(g.shift)
    return free_reduce(out)


def house_word(i: int, factor: str = PLAIN) -> Word:
    return lamp_word(house(i), factor)


def identification_word(j: int) -> Word:
    """u_j uh_j^-1, trivial in L(A) exactly when j is in A."""
    return free_reduce(house_word(j, PLAIN) + house_word(j, HAT).inverse())


# -- normal forms in the amalgam ---------------------------------------------------

@dataclass(frozen=True)
class DysonContext:
    """L(A) for a set A given by an oracle."""

    A: ZSetOracle
    budget: Optional[Budget] = None


@dataclass(frozen=True)
class DysonNormalForm:
    """Alternating syllables; all but the last are nontrivial coset representatives
    whose lamps avoid A.  The empty tuple is the identity."""

    syllables: tuple[tuple[str, Lamp], ...]
    modulus: Optional[int] = None

    @property
    def is_trivial(self) -> bool:
        return not self.syllables

    def __len__(self) -> int:
        return len(self.syllables)

    def to_json(self) -> list[dict]:
        return [{"factor": f, **g.to_dict()} for f, g in self.syllables]

    def lamp_indices(self) -> set[int]:
        return {i for _, g in self.syllables for i in g.lamps}


def _syllables(w: Sequence[int], modulus: Optional[int]) -> list[list]:
    out: list[list] = []
    for letter in free_reduce(w):
        factor, g = _letter_lamp(letter)
        if out and out[-1][0] == factor:
            out[-1][1] = lamp_mul(out[-1][1], g, modulus)
        else:
            out.append([factor, g])
    return out


def _other(factor: str) -> str:
    return HAT if factor == PLAIN else PLAIN


def _rewrite(syl: list[list], member: Callable[[int], bool], modulus: Optional[int]) -> list[list]:
    """Run the coset decomposition to a fixpoint."""
    while True:
        # drop identities and merge neighbours of the same factor
        merged: list[list] = []
        for f, g in syl:
            if g.is_identity:
                continue
            if merged and merged[-1][0] == f:
                merged[-1][1] = lamp_mul(merged[-1][1], g, modulus)
                if merged[-1][1].is_identity:
                    merged.pop()
            else:
                merged.append([f, g])
        syl = merged
        changed = False
        for i in range(len(syl) - 1):
            f, g = syl[i]
            inside = frozenset(j for j in g.lamps if member(j))
            if not inside:
                continue
            # g = (shift, S - A) * (0, S & A); the second part lies in both factors
            syl[i] = [f, Lamp(g.shift, g.lamps - inside)]
            syl[i + 1] = [syl[i + 1][0], lamp_mul(Lamp(0, inside), syl[i + 1][1], modulus)]
            changed = True
            break
        if not changed:
            return syl


def _oracle_member(ctx: DysonContext) -> Callable[[int], bool]:
    cache: dict[int, bool] = {}

    def member(j: int) -> bool:
        if j not in cache:
            v = ctx.A.member(j, ctx.budget)
            if v is None:
                raise OracleUnknown(j)
            cache[j] = bool(v)
        return cache[j]

    return member


def normal_form(w: Sequence[int], ctx: DysonContext) -> DysonNormalForm:
    syl = _rewrite(_syllables(w, None), _oracle_member(ctx), None)
    return DysonNormalForm(tuple((f, g) for f, g in syl))


def wp_dyson(w: Sequence[int], ctx: DysonContext) -> bool:
    """True iff w is the identity of L(A)."""
    return normal_form(w, ctx).is_trivial


def dyson_oracle(ctx: DysonContext) -> Callable[[Sequence[int]], bool]:
    return lambda w: wp_dyson(w, ctx)


def nf_mod_n(w: Sequence[int], a_mod_n: Iterable[int], n: int) -> DysonNormalForm:
    """Normal form in L(A)_n, where shifts and lamp indices live in Z/n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    residues = frozenset(r % n for r in a_mod_n)
    syl = _rewrite(_syllables(w, n), lambda j: j % n in residues, n)
    return DysonNormalForm(tuple((f, g) for f, g in syl), n)


# -- the finite quotients L(A)_n -----------------------------------------------------

def lan_relators(n: int, identified: Iterable[int]) -> list[Word]:
    """Relators of L(A)_n with identifications at the residues given."""
    rels = [Word([A] * n), Word([AH] * n), Word([E, E]), Word([EH, EH])]
    for i in range(n):
        rels.append(commutator(Word([E]), house_word(i, PLAIN)))
        rels.append(commutator(Word([EH]), house_word(i, HAT)))
    for j in sorted(set(identified)):
        rels.append(identification_word(j))
    return rels


def _exact_mod(ctx: DysonContext, n: int) -> set[int]:
    residues, complete = ctx.A.mod_n(n, ctx.budget)
    if not complete:
        undecided = sorted(set(range(n)) - set(residues))
        raise ModUnknown(n, undecided)
    return set(residues)


def lan_presentation(ctx: DysonContext, n: int) -> Presentation:
    """The finite presentation of <L(A) | a^n, ah^n>."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Presentation(GENERATORS, lan_relators(n, _exact_mod(ctx, n)))


def _max_extent(nf: DysonNormalForm) -> int:
    m = 0
    for _, g in nf.syllables:
        m = max([m, abs(g.shift)] + [abs(i) for i in g.lamps])
    return m


def _witnesses(nf: DysonNormalForm, ctx: DysonContext) -> dict[int, int]:
    """A separating modulus for every lamp of the non-final syllables."""
    out: dict[int, int] = {}
    for _, g in nf.syllables[:-1]:
        for k in sorted(g.lamps):
            if k in out:
                continue
            b = ctx.A.witness(k, ctx.budget)
            if b is None:
                raise NoWitness(k)
            out[k] = b
    return out


def rf_witness(w: Sequence[int], ctx: DysonContext) -> int:
    """A modulus N such that w survives in L(A)_N.

    N is the product of the lamp witnesses, multiplied up to exceed
    2 * (largest |shift| or |lamp index|) + 1 so that nothing collides mod N.
    """
    nf = normal_form(w, ctx)
    if nf.is_trivial:
        raise PreconditionViolated("w is trivial in L(A)")
    base = 1
    for b in _witnesses(nf, ctx).values():
        base *= b
    bound = 2 * _max_extent(nf) + 1
    c = 1
    while c * base <= bound:
        c += 1
    return c * base


def _residues_for_separation(ctx: DysonContext, nf: DysonNormalForm, n: int) -> tuple[set[int], bool]:
    """Identification residues for L(A)_n: exact when the oracle can give them,
    otherwise every residue not positively excluded (a quotient of L(A)_n)."""
    residues, complete = ctx.A.mod_n(n, ctx.budget)
    if complete:
        return set(residues), True
    excluded = {k % n for k, b in _witnesses(nf, ctx).items() if n % b == 0}
    for r in range(n):
        if r in residues or r in excluded:
            continue
        if ctx.A.member(r, ctx.budget) is False:
            b = ctx.A.witness(r, ctx.budget)
            if b is not None and n % b == 0:
                excluded.add(r)
    return set(range(n)) - excluded, False


def separate_in_finite(w: Sequence[int], ctx: DysonContext, max_order: int,
                       cap: Optional[int] = None) -> Verdict:
    """A finite quotient of L(A) in which w survives."""
    nf = normal_form(w, ctx)
    if nf.is_trivial:
        raise PreconditionViolated("w is trivial in L(A); nothing to separate")
    n = rf_witness(w, ctx)
    identified, exact = _residues_for_separation(ctx, nf, n)
    p = Presentation(GENERATORS, lan_relators(n, identified))
    w = free_reduce(w)
    cap = max(DEFAULT_CAP, max_order) if cap is None else cap
    used = 0
    for m in iter_marked_quotients(p, max_order, cap=cap):
        used += 1
        image = evaluate_word(m, w)
        if image != 0:
            cert = {"kind": "dyson_separation", "N": n, "identified": sorted(identified),
                    "exact": exact, "group": m, "image": image}
            return Verdict(Outcome.YES, cert, used)
    return Verdict.unknown(Budget(steps=used, max_order=max_order), used,
                           note=f"no quotient of L(A)_{n} of order <= {max_order} separates")


def check_dyson_separation(w: Sequence[int], ctx: DysonContext, v: Verdict) -> bool:
    """Re-check a separation certificate from scratch."""
    if v.outcome is not Outcome.YES:
        return False
    cert = v.certificate
    m, n = cert["group"], cert["N"]
    identified = set(cert["identified"])
    if m.n != 4:
        return False
    residues, complete = ctx.A.mod_n(n, ctx.budget)
    if complete and identified != set(residues):
        return False
    if not set(residues) <= identified:
        return False
    p = Presentation(GENERATORS, lan_relators(n, identified))
    return is_marked_quotient(m, p) and evaluate_word(m, free_reduce(w)) != 0


# -- the CFQ check ---------------------------------------------------------------------

def quotient_check_dyson(m: MarkedGroup, ctx: DysonContext, shortcut: bool = False) -> Verdict:
    """Does the marking (a, ah, e, eh) -> m extend to a homomorphism from L(A)?

    Any such homomorphism factors through L(A)_n with n = ord(a) * ord(ah),
    so the answer is read off the presentation of L(A)_n.  When A mod n is
    only partly known, a failing relator among the decided part gives No and
    the answer is otherwise Unknown.  With ``shortcut`` the undecided
    identifications are tested in m directly and Unknown is kept only for
    those that fail there.
    """
    if m.n != 4:
        raise ValueError("a Dyson marking has four entries (a, ah, e, eh)")
    orders = m.group.element_orders
    n = orders[m.marking[0]] * orders[m.marking[1]]
    residues, complete = ctx.A.mod_n(n, ctx.budget)
    base = lan_relators(n, ())
    for r in base:
        if evaluate_word(m, r) != 0:
            return Verdict(Outcome.NO, {"kind": "failing_relator", "n": n, "relator": r, "identification": None})
    for j in sorted(residues):
        r = identification_word(j)
        if evaluate_word(m, r) != 0:
            return Verdict(Outcome.NO, {"kind": "failing_relator", "n": n, "relator": r, "identification": j})
    if complete:
        return Verdict(Outcome.YES, {"kind": "quotient_of_lan", "n": n, "identified": sorted(residues)})
    undecided = sorted(set(range(n)) - set(residues))
    if shortcut:
        failing = [j for j in undecided if evaluate_word(m, identification_word(j)) != 0]
        if not failing:
            return Verdict(Outcome.YES, {"kind": "quotient_of_lan", "n": n, "identified": sorted(residues),
                                         "holds_anyway": undecided})
        undecided = failing
    return Verdict(Outcome.UNKNOWN, {"kind": "mod_unknown", "n": n, "undecided": undecided})
