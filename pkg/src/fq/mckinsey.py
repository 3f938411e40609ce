"""McKinsey-style procedures: finite quotients against relator consequences.

A word that dies in the group is eventually derived from the relators; a
word that survives in some finite quotient is eventually seen to survive.
Running both searches side by side solves the word problem of a finitely
presented residually finite group, and the same pattern separates sets that
are closed in the profinite topology.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .core.derivation import DerivationSearch, check_derivation
from .core.presentation import Presentation
from .core.verdict import Budget, Outcome, Verdict
from .core.words import Word, free_reduce, reduced_words
from .finite.cayley import (
    CapExceeded,
    MarkedGroup,
    conjugacy_class,
    evaluate_word,
    is_conjugate_in_finite,
    is_marked_quotient,
    subgroup_generated,
)
from .finite.census import DEFAULT_CAP
from .quotients import iter_marked_quotients, marked_quotients, membership_fin_normal

SINGLETON = "singleton"
CONJUGACY_CLASS = "conjugacy_class"
FG_SUBGROUP = "fg_subgroup"
Z_PROGRESSIONS = "z_progressions"
Z_FINITE = "z_finite"
KINDS = (SINGLETON, CONJUGACY_CLASS, FG_SUBGROUP, Z_PROGRESSIONS, Z_FINITE)


@dataclass(frozen=True)
class SetDescriptor:
    """A subset of the group whose image in any finite quotient is computable."""

    kind: str
    words: tuple[Word, ...] = ()
    progressions: tuple[tuple[int, int], ...] = ()
    integers: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown set kind {self.kind!r}")
        object.__setattr__(self, "words", tuple(free_reduce(w) for w in self.words))
        for a, b in self.progressions:
            if b < 1:
                raise ValueError("progression modulus must be >= 1")

    def check_for(self, p: Presentation) -> None:
        if self.kind in (Z_PROGRESSIONS, Z_FINITE) and (p.n_gens != 1 or p.relators):
            raise ValueError(f"{self.kind} sets only make sense in Z = < a | >")
        for w in self.words:
            if w.max_index() >= p.n_gens:
                raise ValueError("descriptor word uses a generator outside the presentation")

    def image(self, m: MarkedGroup) -> frozenset[int]:
        g = m.group
        if self.kind == SINGLETON:
            return frozenset({evaluate_word(m, self.words[0])})
        if self.kind == CONJUGACY_CLASS:
            return conjugacy_class(g, evaluate_word(m, self.words[0]))
        if self.kind == FG_SUBGROUP:
            return subgroup_generated(g, [evaluate_word(m, w) for w in self.words])
        q = m.order
        x = m.marking[0]
        if self.kind == Z_FINITE:
            return frozenset(g.power(x, n % q) for n in self.integers)
        out = set()
        for a, b in self.progressions:
            for k in range(q):
                out.add(g.power(x, (a + k * b) % q))
        return frozenset(out)


def Singleton(w: Sequence[int]) -> SetDescriptor:
    return SetDescriptor(SINGLETON, (Word(w),))


def ConjugacyClass(w: Sequence[int]) -> SetDescriptor:
    return SetDescriptor(CONJUGACY_CLASS, (Word(w),))


def FgSubgroup(ws: Sequence[Sequence[int]]) -> SetDescriptor:
    return SetDescriptor(FG_SUBGROUP, tuple(Word(w) for w in ws))


def ZProgressionUnion(pairs: Sequence[tuple[int, int]]) -> SetDescriptor:
    return SetDescriptor(Z_PROGRESSIONS, progressions=tuple((int(a) % int(b), int(b)) for a, b in pairs))


def ZFinite(ints: Sequence[int]) -> SetDescriptor:
    return SetDescriptor(Z_FINITE, integers=tuple(int(n) for n in ints))


def wp_mckinsey(p: Presentation, w: Sequence[int], budget: Budget, cap: int = DEFAULT_CAP) -> Verdict:
    """Yes (w = 1, derivation) or No (a finite quotient where w survives)."""
    return membership_fin_normal(p, [], w, budget, cap=cap)


def check_wp_certificate(p: Presentation, w: Sequence[int], v: Verdict) -> bool:
    cert = v.certificate
    if v.outcome is Outcome.YES:
        return check_derivation(p, w, cert["factors"])
    if v.outcome is Outcome.NO:
        q = cert["group"]
        return is_marked_quotient(q, p) and evaluate_word(q, w) != 0
    return False


def separate(p: Presentation, a: SetDescriptor, b: SetDescriptor, g: Sequence[int], budget: Budget,
             cap: int = DEFAULT_CAP) -> Verdict:
    """Decide whether g (promised in A or B) lies in A or in B.

    Looks for a finite quotient in which the image of g misses the image of
    one of the two sets.  This terminates when the closures of A and B in
    the profinite topology are disjoint.
    """
    a.check_for(p)
    b.check_for(p)
    g = free_reduce(g)
    used = 0
    for m in iter_marked_quotients(p, budget.order_cap, cap=max(cap, budget.order_cap)):
        if used >= budget.steps:
            break
        used += 1
        x = evaluate_word(m, g)
        for outcome, other in ((Outcome.IN_A, b), (Outcome.IN_B, a)):
            img = other.image(m)
            if x not in img:
                cert = {"kind": "separating_quotient", "group": m, "image": x, "excluded_set": sorted(img)}
                return Verdict(outcome, cert, used)
    return Verdict.unknown(budget, used)


def check_separation(p: Presentation, a: SetDescriptor, b: SetDescriptor, g, v: Verdict) -> bool:
    if v.outcome not in (Outcome.IN_A, Outcome.IN_B):
        return False
    m = v.certificate["group"]
    other = b if v.outcome is Outcome.IN_A else a
    return is_marked_quotient(m, p) and evaluate_word(m, free_reduce(g)) not in other.image(m)


def conjugacy_check(p: Presentation, x: Sequence[int], y: Sequence[int], budget: Budget,
                    cap: int = DEFAULT_CAP) -> Verdict:
    """Is x = c y c^-1 for some c?

    No comes from a finite quotient where the images are not conjugate.  Yes
    comes from a conjugator c together with a derivation of c y c^-1 x^-1;
    conjugators are tried in shortlex order and their derivation searches are
    advanced diagonally, so each one gets unboundedly many steps.
    """
    x, y = free_reduce(x), free_reduce(y)
    if x == y:
        return Verdict(Outcome.YES, {"kind": "conjugator", "conjugator": Word(), "factors": []}, 0)
    quotients = iter_marked_quotients(p, budget.order_cap, cap=max(cap, budget.order_cap))
    conjugators = reduced_words(p.n_gens, 10 ** 9)
    searches: list[tuple[Word, DerivationSearch]] = []
    exhausted = False
    cursor = 0
    used = 0
    while used < budget.steps:
        used += 1
        if used % 2 == 1 and not exhausted:
            m = next(quotients, None)
            if m is None:
                exhausted = True
                continue
            ix, iy = evaluate_word(m, x), evaluate_word(m, y)
            if not is_conjugate_in_finite(m.group, ix, iy):
                return Verdict(Outcome.NO, {"kind": "quotient", "group": m, "images": (ix, iy)}, used)
        else:
            # sweep the open searches, then open one more and start over
            if cursor == len(searches):
                c = next(conjugators)
                searches.append((c, DerivationSearch(p, free_reduce(c + y + c.inverse() + x.inverse()))))
                c, search = searches[-1]
                cursor = 0
            else:
                c, search = searches[cursor]
                cursor += 1
            found = search.step()
            if found is not None:
                return Verdict(Outcome.YES, {"kind": "conjugator", "conjugator": c, "factors": found}, used)
    return Verdict.unknown(budget, used)


# -- depth ---------------------------------------------------------------------

WordOracle = Callable[[Word], bool]


def free_group_oracle(w: Sequence[int]) -> bool:
    """Triviality in a free group."""
    return len(free_reduce(w)) == 0


def free_abelian_oracle(w: Sequence[int]) -> bool:
    """Triviality in a free abelian group: every exponent sum vanishes."""
    sums: dict[int, int] = {}
    for letter in w:
        sums[abs(letter)] = sums.get(abs(letter), 0) + (1 if letter > 0 else -1)
    return all(v == 0 for v in sums.values())


def finite_group_oracle(m: MarkedGroup) -> WordOracle:
    """Triviality in a finite group given by a marked table."""
    return lambda w: evaluate_word(m, w) == 0


def trivial_group_oracle(w: Sequence[int]) -> bool:
    return True


@dataclass(frozen=True)
class DepthTable:
    entries: dict[int, Optional[int]] = field(default_factory=dict)
    witnesses: dict[int, Optional[Word]] = field(default_factory=dict, compare=False)

    def __getitem__(self, n: int) -> Optional[int]:
        return self.entries[n]

    def rows(self) -> list[dict]:
        return [{"n": n, "rho": rho if rho is not None else "unknown"} for n, rho in sorted(self.entries.items())]

    def to_text(self) -> str:
        lines = ["n\trho"]
        for row in self.rows():
            lines.append(f"{row['n']}\t{row['rho']}")
        return "\n".join(lines)


def depth(p: Presentation, wp_oracle: WordOracle, max_len: int, max_order: int,
          cap: int = DEFAULT_CAP) -> DepthTable:
    """rho(n): the least order of a finite quotient that detects every
    nontrivial element of length at most n.

    For each nontrivial reduced word the least order of a marked quotient
    where it survives is found by scanning the enumeration in order; rho(n)
    is the running maximum.  An entry is None (unknown) as soon as some word
    of that length survives in no quotient of order <= ``max_order``.
    """
    if max_order > cap:
        raise CapExceeded(f"max_order {max_order} exceeds the feasibility cap {cap}")
    quotients = marked_quotients(p, max_order, cap=cap).entries
    entries: dict[int, Optional[int]] = {}
    witnesses: dict[int, Optional[Word]] = {}
    current: Optional[int] = 1
    worst: Optional[Word] = None
    for n in range(0, max_len + 1):
        for w in reduced_words(p.n_gens, n, n):
            if current is None or wp_oracle(w):
                continue
            best = next((q.order for q in quotients if evaluate_word(q, w) != 0), None)
            if best is None:
                current, worst = None, w
            elif best > current:
                current, worst = best, w
        if n >= 1:
            entries[n] = current
            witnesses[n] = worst
    return DepthTable(entries, witnesses)
