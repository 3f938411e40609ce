"""Enumeration of n-marked finite groups up to marked isomorphism.

Two markings of the same group are identified when an automorphism carries
one onto the other.  Representatives are the lexicographically least
marking in each automorphism orbit of the canonical table, listed by
(order, table, marking).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

from ..core.presentation import Presentation
from ..core.words import Word, free_reduce
from .cayley import (
    CapExceeded,
    CayleyGroup,
    MarkedGroup,
    subgroup_generated,
    validate_cayley,
    word_for_elements,
)
from .census import (
    DEFAULT_CAP,
    automorphisms,
    canonical_form,
    canonical_isomorphism,
    groups_of_order,
    table_key,
)


@dataclass(frozen=True)
class QuotientList:
    entries: tuple[MarkedGroup, ...]
    n_generators: int
    max_order: int

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def orders(self) -> list[int]:
        return [e.order for e in self.entries]


def sort_key(m: MarkedGroup) -> tuple:
    return (m.order, table_key(m.group), m.marking)


def _relators_by_depth(relators: Sequence[Sequence[int]], n: int) -> list[list[Sequence[int]]]:
    out: list[list[Sequence[int]]] = [[] for _ in range(n)]
    for r in relators:
        k = max(abs(x) - 1 for x in r)
        if k >= n:
            raise ValueError("relator uses a generator beyond the marking arity")
        out[k].append(r)
    return out


def _eval(t, inv, marks, w) -> int:
    x = 0
    for letter in w:
        y = marks[abs(letter) - 1]
        x = t[x][y if letter > 0 else inv[y]]
    return x


def marked_orbit_reps(g: CayleyGroup, n: int, relators: Sequence[Sequence[int]] = (),
                      accept: Optional[Callable[[tuple[int, ...]], bool]] = None) -> Iterator[tuple[int, ...]]:
    """Lex-least generating n-tuples of g, one per Aut(g)-orbit, that kill ``relators``.

    The relator test is automorphism invariant, so it is applied as a prefix
    filter during the depth-first walk.  ``accept`` must also be invariant.
    """
    m = g.order
    t, inv = g.table, g.inverse
    by_depth = _relators_by_depth(relators, n)
    auts = automorphisms(g)
    visited: set[tuple[int, ...]] = set()
    marks = [0] * n

    def rec(k):
        if k == n:
            tup = tuple(marks)
            if tup in visited:
                return
            if len(subgroup_generated(g, tup)) != m:
                return
            if accept is not None and not accept(tup):
                return
            for phi in auts:
                visited.add(tuple(phi[x] for x in tup))
            yield tup
            return
        for x in range(m):
            marks[k] = x
            if all(_eval(t, inv, marks, r) == 0 for r in by_depth[k]):
                yield from rec(k + 1)
        marks[k] = 0

    yield from rec(0)


def iter_marked_groups(n: int, max_order: int, relators: Sequence[Sequence[int]] = (),
                       cap: int = DEFAULT_CAP, min_order: int = 1) -> Iterator[MarkedGroup]:
    """Lazily yield marked groups in canonical order (nondecreasing order)."""
    if n < 1:
        raise ValueError("need at least one generator")
    if max_order > cap:
        raise CapExceeded(f"max_order {max_order} exceeds the feasibility cap {cap}")
    relators = [free_reduce(r) for r in relators]
    relators = [r for r in relators if r]
    for order in range(min_order, max_order + 1):
        for g in groups_of_order(order, cap=cap):
            for tup in marked_orbit_reps(g, n, relators):
                yield MarkedGroup(g, tup)


def enumerate_marked_groups(n_generators: int, max_order: int, cap: int = DEFAULT_CAP) -> QuotientList:
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    entries = tuple(iter_marked_groups(n_generators, max_order, cap=cap))
    return QuotientList(entries, n_generators, max_order)


def canonical_marked(m: MarkedGroup) -> MarkedGroup:
    """The representative of m's marked-isomorphism class used in enumerations."""
    phi = canonical_isomorphism(m.group)
    c = canonical_form(m.group)
    marks = tuple(phi[x] for x in m.marking)
    best = min(tuple(a[x] for x in marks) for a in automorphisms(c))
    return MarkedGroup(c, best, m.names)


def marked_isomorphic(m1: MarkedGroup, m2: MarkedGroup) -> bool:
    """Does f1(s) -> f2(s) extend to an isomorphism F1 -> F2?"""
    if m1.n != m2.n:
        raise ValueError("markings of different arity")
    if m1.order != m2.order:
        return False
    phi = marked_map(m1, m2)
    return phi is not None and len(set(phi)) == m1.order


def marked_map(m1: MarkedGroup, m2: MarkedGroup) -> Optional[tuple[int, ...]]:
    """The homomorphism F1 -> F2 sending f1(s) to f2(s), if it exists."""
    t1, t2 = m1.group.table, m2.group.table
    phi = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for a, b in zip(m1.marking, m2.marking):
                y, z = t1[x][a], t2[phi[x]][b]
                if y in phi:
                    if phi[y] != z:
                        return None
                else:
                    phi[y] = z
                    nxt.append(y)
        frontier = nxt
    if len(phi) != m1.order:
        return None
    # well defined on generators; check it respects every product
    for x in range(m1.order):
        for y in range(m1.order):
            if phi[t1[x][y]] != t2[phi[x]][phi[y]]:
                return None
    return tuple(phi[x] for x in range(m1.order))


def dedupe_marked(groups: Iterable[MarkedGroup]) -> list[MarkedGroup]:
    """Canonical representatives, one per marked-isomorphism class, sorted."""
    seen = {}
    for m in groups:
        c = canonical_marked(m)
        seen[(table_key(c.group), c.marking)] = c
    return sorted(seen.values(), key=sort_key)


def table_presentation(m: MarkedGroup, names: Optional[Sequence[str]] = None) -> Presentation:
    """A finite presentation of F on the marking: ``W_x s W_{xs}^-1`` for all x, s.

    ``W_x`` is the shortlex-least word for x.  Relators that reduce to the
    empty word are dropped.
    """
    if names is None:
        names = m.names or default_names(m.n)
    words = word_for_elements(m)
    t = m.group.table
    rels: list[Word] = []
    seen = set()
    for x in range(m.order):
        for i, s in enumerate(m.marking):
            r = free_reduce(words[x] + Word([i + 1]) + words[t[x][s]].inverse())
            if r and r not in seen:
                seen.add(r)
                rels.append(r)
    return Presentation(names, rels)


def default_names(n: int) -> list[str]:
    if n <= 26:
        return [chr(ord("a") + i) for i in range(n)]
    return [f"x{i}" for i in range(n)]


# -- Cayley JSON -----------------------------------------------------------

def to_cayley_dict(m: MarkedGroup, names: Optional[Sequence[str]] = None) -> dict:
    names = list(names or m.names or default_names(m.n))
    return {
        "order": m.order,
        "table": [list(row) for row in m.group.table],
        "marking": {name: x for name, x in zip(names, m.marking)},
    }


def from_cayley_dict(data: dict) -> MarkedGroup:
    try:
        order, table, marking = data["order"], data["table"], data["marking"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"Cayley JSON needs order, table and marking: {exc}") from None
    if not isinstance(marking, dict):
        raise ValueError("marking must be an object mapping generator names to elements")
    return validate_cayley(int(order), table, {str(k): int(v) for k, v in marking.items()})


def dump_cayley(m: MarkedGroup, names: Optional[Sequence[str]] = None) -> str:
    return json.dumps(to_cayley_dict(m, names), separators=(",", ":"))


def load_cayley(text: str) -> MarkedGroup:
    return from_cayley_dict(json.loads(text))
