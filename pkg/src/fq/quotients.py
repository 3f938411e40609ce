"""Finite quotients of finitely presented groups.

Enumeration of marked quotients (the relator filter over all marked finite
groups), change of generating set, Schreier generators of kernels, and the
conversions between the two ways of naming a finite-index normal subgroup:
by normal generators, or by the quotient map onto a finite marked group.
"""
from __future__ import annotations

from typing import Iterator, Mapping, Optional, Sequence, Union

from .core.derivation import DerivationSearch
from .core.presentation import Presentation, add_relators, parse_word
from .core.verdict import Budget, Outcome, Verdict
from .core.words import Word, free_reduce
from .finite.cayley import (
    MarkedGroup,
    evaluate_word,
    is_marked_quotient,
    normal_subgroups,
    quotient_group,
    subgroup_as_group,
    subgroup_generated,
    word_for_elements,
)
from .finite.census import DEFAULT_CAP
from .finite.marked import QuotientList, dedupe_marked, iter_marked_groups, table_presentation

WordLike = Union[str, Sequence[int]]


class ConsistencyViolated(ValueError):
    def __init__(self, generator: int):
        super().__init__(f"dictionaries disagree on generator {generator}")
        self.generator = generator


def iter_marked_quotients(p: Presentation, max_order: int, cap: int = DEFAULT_CAP) -> Iterator[MarkedGroup]:
    return iter_marked_groups(p.n_gens, max_order, p.relators, cap=cap)


def marked_quotients(p: Presentation, max_order: int, cap: int = DEFAULT_CAP) -> QuotientList:
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    return QuotientList(tuple(iter_marked_quotients(p, max_order, cap)), p.n_gens, max_order)


def _as_word(w: WordLike, names: Optional[Sequence[str]], n: int) -> Word:
    if isinstance(w, str):
        if names is None:
            raise ValueError("text words need generator names")
        return parse_word(w, names)
    w = free_reduce(w)
    if w.max_index() >= n:
        raise ValueError(f"word {list(w)} uses a generator beyond {n}")
    return w


def _as_list(d) -> list:
    if isinstance(d, Mapping):
        keys = sorted(d)
        if keys != list(range(len(keys))):
            raise ValueError("dictionary keys must be generator indices 0..k-1")
        return [d[k] for k in keys]
    return list(d)


def remark_quotient(
    m: MarkedGroup,
    dict_s_in_t: Union[Sequence[WordLike], Mapping[int, WordLike]],
    dict_t_in_s: Union[Sequence[WordLike], Mapping[int, WordLike]],
    s_names: Optional[Sequence[str]] = None,
    t_names: Optional[Sequence[str]] = None,
) -> MarkedGroup:
    """Move a marked quotient from generating set S to generating set T.

    ``dict_t_in_s[j]`` writes t_j as a word in S and fixes the new marking;
    ``dict_s_in_t[i]`` writes s_i in T and is used to check that
    f(s_i) = f'(dict_s_in_t[i]) holds in F.
    """
    s_in_t = _as_list(dict_s_in_t)
    t_in_s = _as_list(dict_t_in_s)
    if len(s_in_t) != m.n:
        raise ValueError(f"dict_s_in_t has {len(s_in_t)} words for {m.n} generators")
    t_words = [_as_word(w, s_names, m.n) for w in t_in_s]
    new_marking = tuple(evaluate_word(m, w) for w in t_words)
    m2 = MarkedGroup(m.group, new_marking)
    for i, w in enumerate(s_in_t):
        w = _as_word(w, t_names, len(t_words))
        if evaluate_word(m2, w) != m.marking[i]:
            raise ConsistencyViolated(i)
    if len(subgroup_generated(m.group, new_marking)) != m.order:
        raise ConsistencyViolated(-1)
    return MarkedGroup(m.group, new_marking, tuple(t_names) if t_names else None)


def schreier_kernel_generators(n_generators: int, m: MarkedGroup) -> list[Word]:
    """Words x^ s (xs)^^-1 generating the kernel of the free group onto F.

    Preimages x^ are the shortlex-least words; trivial and repeated words are
    dropped.  Elements are visited in shortlex order of their preimages.
    """
    if n_generators != m.n:
        raise ValueError("arity mismatch")
    words = word_for_elements(m)
    t = m.group.table
    out: list[Word] = []
    seen = set()
    for x in sorted(words, key=lambda e: (len(words[e]), [2 * (abs(c) - 1) + (c < 0) for c in words[e]])):
        for i, s in enumerate(m.marking):
            w = free_reduce(words[x] + Word([i + 1]) + words[t[x][s]].inverse())
            if w and w not in seen:
                seen.add(w)
                out.append(w)
    return out


def membership_fin_normal(p: Presentation, n_gens: Sequence[Sequence[int]], g: Sequence[int], budget: Budget,
                          cap: int = DEFAULT_CAP) -> Verdict:
    """Is g in the normal subgroup N generated by ``n_gens``?

    One budget unit alternates between a step of the derivation search for g
    in <S | R, n_gens> and testing the next finite quotient of that group.
    """
    g = free_reduce(g)
    p2 = add_relators(p, n_gens)
    search = DerivationSearch(p2, g)
    quotients = iter_marked_quotients(p2, budget.order_cap, cap=max(cap, budget.order_cap))
    exhausted = False
    used = 0
    while used < budget.steps:
        used += 1
        if used % 2 == 1 or exhausted:
            found = search.step()
            if found is not None:
                return Verdict(Outcome.YES, {"kind": "derivation", "presentation": p2, "factors": found}, used)
        else:
            q = next(quotients, None)
            if q is None:
                exhausted = True
                continue
            image = evaluate_word(q, g)
            if image != 0:
                return Verdict(Outcome.NO, {"kind": "quotient", "group": q, "image": image}, used)
    return Verdict.unknown(budget, used)


def check_membership_no(p: Presentation, n_gens, g, cert) -> bool:
    q = cert["group"]
    return (is_marked_quotient(q, p) and all(evaluate_word(q, w) == 0 for w in n_gens)
            and evaluate_word(q, g) != 0)


class _UpperBound:
    """Derivations of every table relator of a candidate quotient inside p."""

    def __init__(self, p: Presentation, q: MarkedGroup):
        self.q = q
        self.relators = list(table_presentation(q).relators)
        self.searches = [DerivationSearch(p, r) for r in self.relators]
        self.proofs: list = [None] * len(self.relators)
        self.i = 0

    def step(self) -> bool:
        while self.i < len(self.searches) and self.proofs[self.i] is not None:
            self.i += 1
        if self.i == len(self.searches):
            return True
        found = self.searches[self.i].step()
        if found is not None:
            self.proofs[self.i] = found
        return all(x is not None for x in self.proofs)


def normal_to_quotient(p: Presentation, n_gens: Sequence[Sequence[int]], budget: Budget,
                       cap: int = DEFAULT_CAP) -> Verdict:
    """Find the finite marked group (F, f) whose kernel is the normal closure of ``n_gens``.

    Lower bound: the largest marked quotient Q of <S | R, n_gens> seen so far;
    its elements give |Q| words that are pairwise distinct modulo N.  Upper
    bound: derivations of all relators of a presentation of Q from R and
    ``n_gens``, which show that G/N is itself a quotient of Q.  When both hold
    for the same Q, it is G/N.
    """
    p2 = add_relators(p, n_gens)
    quotients = iter_marked_quotients(p2, budget.order_cap, cap=max(cap, budget.order_cap))
    best: Optional[MarkedGroup] = None
    upper: Optional[_UpperBound] = None
    exhausted = False
    used = 0
    while used < budget.steps:
        used += 1
        if used % 2 == 1 and not exhausted:
            q = next(quotients, None)
            if q is None:
                exhausted = True
                continue
            if best is None or q.order > best.order:
                best = q
                upper = _UpperBound(p2, q)
        elif upper is not None:
            if upper.step():
                words = word_for_elements(best)
                cert = {
                    "kind": "finite_quotient",
                    "group": best,
                    "coset_representatives": [words[x] for x in range(best.order)],
                    "derivations": list(zip(upper.relators, upper.proofs)),
                    "presentation": p2,
                }
                return Verdict(Outcome.YES, cert, used)
    return Verdict.unknown(budget, used)


def restricted_quotients(p: Presentation, sub_gens: Sequence[Sequence[int]], max_order: int,
                         source_max_order: Optional[int] = None, cap: int = DEFAULT_CAP) -> QuotientList:
    """Finite marked quotients of the subgroup generated by ``sub_gens``.

    Every marked quotient (F, f) of p up to ``source_max_order`` is restricted
    to the image K of the subgroup, and every quotient of K of order at most
    ``max_order`` is kept.  The images of a subgroup can be larger than its
    quotients of interest, hence the separate source bound (default: the cap).
    """
    if not sub_gens:
        raise ValueError("need at least one subgroup generator")
    src = cap if source_max_order is None else source_max_order
    src = max(src, max_order)
    sub_gens = [free_reduce(w) for w in sub_gens]
    found = []
    for m in iter_marked_quotients(p, src, cap=max(cap, src)):
        images = [evaluate_word(m, w) for w in sub_gens]
        k_elems = subgroup_generated(m.group, images)
        k, labels = subgroup_as_group(m.group, k_elems)
        pos = {x: i for i, x in enumerate(labels)}
        k_marks = [pos[x] for x in images]
        for nsub in normal_subgroups(k):
            if k.order // len(nsub) > max_order:
                continue
            qg, proj = quotient_group(k, nsub)
            found.append(MarkedGroup(qg, tuple(proj[x] for x in k_marks)))
    return QuotientList(tuple(dedupe_marked(found)), len(sub_gens), max_order)


def lifted_quotient_check(p: Presentation, extra: Sequence[Sequence[int]], m: MarkedGroup) -> bool:
    """Is m a marked quotient of <S | R, extra>?"""
    if m.n != p.n_gens:
        raise ValueError(f"arity mismatch: presentation has {p.n_gens} generators, marking {m.n}")
    return is_marked_quotient(m, p) and all(evaluate_word(m, free_reduce(w)) == 0 for w in extra)
