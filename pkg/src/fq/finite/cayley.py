"""Finite groups given by multiplication tables, and marked groups (F, f).

Elements are the integers ``0 .. m-1`` with the identity pinned at 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping, Sequence

from ..core.words import Word


class CayleyError(ValueError):
    pass


class NoIdentity(CayleyError):
    pass


class NotPermutationRow(CayleyError):
    def __init__(self, i: int, column: bool = False):
        what = "column" if column else "row"
        super().__init__(f"{what} {i} is not a permutation")
        self.index = i


class NotAssociative(CayleyError):
    def __init__(self, triple: tuple[int, int, int]):
        super().__init__(f"(xy)z != x(yz) for (x, y, z) = {triple}")
        self.triple = triple


class MarkingDoesNotGenerate(CayleyError):
    pass


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True, eq=True)
class CayleyGroup:
    table: tuple[tuple[int, ...], ...]

    def __init__(self, table: Iterable[Sequence[int]]):
        object.__setattr__(self, "table", tuple(tuple(int(x) for x in row) for row in table))

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        return tuple(row.index(0) for row in self.table)

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inverse[x], -k
        out = 0
        for _ in range(k):
            out = self.table[out][x]
        return out

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for x in range(self.order):
            k, y = 1, x
            while y != 0:
                y = self.table[y][x]
                k += 1
            out.append(k)
        return tuple(out)

    def element_order(self, x: int) -> int:
        return self.element_orders[x]

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[x][y] == t[y][x] for x in range(self.order) for y in range(x))

    def __repr__(self) -> str:
        return f"CayleyGroup(order={self.order})"


def check_table(table: Sequence[Sequence[int]]) -> None:
    """Raise the first violated group axiom (identity at 0, Latin, associative)."""
    m = len(table)
    if m == 0:
        raise NoIdentity("empty table")
    for i, row in enumerate(table):
        if len(row) != m:
            raise NotPermutationRow(i)
    if list(table[0]) != list(range(m)) or [row[0] for row in table] != list(range(m)):
        raise NoIdentity("row/column 0 must be the identity map")
    full = set(range(m))
    for i, row in enumerate(table):
        if set(row) != full:
            raise NotPermutationRow(i)
    for j in range(m):
        if {table[i][j] for i in range(m)} != full:
            raise NotPermutationRow(j, column=True)
    for x, y, z in product(range(m), repeat=3):
        if table[table[x][y]][z] != table[x][table[y][z]]:
            raise NotAssociative((x, y, z))


def make_group(table: Iterable[Sequence[int]], check: bool = True) -> CayleyGroup:
    table = [list(r) for r in table]
    if check:
        check_table(table)
    return CayleyGroup(table)


def subgroup_generated(g: CayleyGroup, elems: Iterable[int]) -> frozenset[int]:
    gens = sorted(set(elems) - {0})
    seen = {0}
    frontier = [0]
    t = g.table
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = t[x][s]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


@dataclass(frozen=True)
class MarkedGroup:
    """A finite group with an ordered tuple of generator images that generates it."""

    group: CayleyGroup
    marking: tuple[int, ...]
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "marking", tuple(int(x) for x in self.marking))

    @property
    def n(self) -> int:
        return len(self.marking)

    @property
    def order(self) -> int:
        return self.group.order

    def image(self, w: Sequence[int]) -> int:
        return evaluate_word(self, w)

    def __repr__(self) -> str:
        return f"MarkedGroup(order={self.order}, marking={self.marking})"


def validate_cayley(order: int, table: Sequence[Sequence[int]], marking: Mapping[str, int] | Sequence[int]) -> MarkedGroup:
    if len(table) != order:
        raise NotPermutationRow(len(table))
    check_table(table)
    g = CayleyGroup(table)
    names = None
    if isinstance(marking, Mapping):
        names = tuple(marking)
        marks = tuple(marking.values())
    else:
        marks = tuple(marking)
    for x in marks:
        if not 0 <= x < order:
            raise CayleyError(f"marking value {x} out of range")
    if len(subgroup_generated(g, marks)) != order:
        raise MarkingDoesNotGenerate(f"marking {marks} generates a proper subgroup")
    return MarkedGroup(g, marks, names)


def evaluate_word(m: MarkedGroup, w: Sequence[int]) -> int:
    t = m.group.table
    inv = m.group.inverse
    marks = m.marking
    x = 0
    for letter in w:
        i = abs(letter) - 1
        if i >= len(marks):
            raise IndexError(f"generator index {i} out of range for {len(marks)} marks")
        y = marks[i]
        x = t[x][y if letter > 0 else inv[y]]
    return x


def is_marked_quotient(m: MarkedGroup, p) -> bool:
    """Every relator of ``p`` vanishes under the marking (F is generated, so f extends)."""
    if p.n_gens != m.n:
        raise ValueError(f"arity mismatch: presentation has {p.n_gens} generators, marking {m.n}")
    return all(evaluate_word(m, r) == 0 for r in p.relators)


# -- constructions ---------------------------------------------------------

def cyclic_group(n: int) -> CayleyGroup:
    if n < 1:
        raise ValueError("cyclic_group needs n >= 1")
    return CayleyGroup([[(i + j) % n for j in range(n)] for i in range(n)])


def lamp_index(n: int, shift: int, bits: int) -> int:
    return shift % n + n * bits


def lamp_decode(n: int, x: int) -> tuple[int, int]:
    return x % n, x // n


def finite_lamplighter(n: int) -> CayleyGroup:
    """Z/n acting on (Z/2)^n by shifting, of order n * 2^n.

    Element ``shift + n * bits`` is ``a^shift * prod u_i`` over the set bits i,
    with ``(s, S)(t, T) = (s + t, (S - t) xor T)``.
    """
    if n < 1:
        raise ValueError("finite_lamplighter needs n >= 1")
    full = (1 << n) - 1

    def rot_down(bits: int, t: int) -> int:
        t %= n
        return ((bits >> t) | (bits << (n - t))) & full if t else bits

    size = n << n
    table = []
    for x in range(size):
        s, S = lamp_decode(n, x)
        row = []
        for y in range(size):
            t, T = lamp_decode(n, y)
            row.append(lamp_index(n, s + t, rot_down(S, t) ^ T))
        table.append(row)
    return CayleyGroup(table)


def direct_product(g: CayleyGroup, h: CayleyGroup) -> CayleyGroup:
    m = h.order
    return CayleyGroup([
        [g.table[x // m][y // m] * m + h.table[x % m][y % m] for y in range(g.order * m)]
        for x in range(g.order * m)
    ])


def dihedral_group(n: int) -> CayleyGroup:
    """Symmetries of the n-gon: element ``k`` is rotation r^k, ``n + k`` is r^k s."""
    def mul(x, y):
        (i, a), (j, b) = divmod(x, n)[::-1], divmod(y, n)[::-1]
        # x = r^i s^a, y = r^j s^b;  s r^j = r^-j s
        k = (i + (j if a == 0 else -j)) % n
        return k + n * ((a + b) % 2)
    return CayleyGroup([[mul(x, y) for y in range(2 * n)] for x in range(2 * n)])


def trivial_group() -> CayleyGroup:
    return CayleyGroup([[0]])


# -- subgroups, conjugacy, quotients ----------------------------------------

def conjugacy_class(g: CayleyGroup, x: int) -> frozenset[int]:
    t, inv = g.table, g.inverse
    return frozenset(t[t[c][x]][inv[c]] for c in range(g.order))


def is_conjugate_in_finite(g: CayleyGroup, x: int, y: int) -> bool:
    return y in conjugacy_class(g, x)


def conjugating_element(g: CayleyGroup, x: int, y: int) -> int | None:
    """Some c with c y c^-1 = x, or None."""
    t, inv = g.table, g.inverse
    for c in range(g.order):
        if t[t[c][y]][inv[c]] == x:
            return c
    return None


def is_normal(g: CayleyGroup, n: Iterable[int]) -> bool:
    n = frozenset(n)
    if 0 not in n or subgroup_generated(g, n) != n:
        return False
    return all(conjugacy_class(g, x) <= n for x in n)


def normal_subgroups(g: CayleyGroup) -> list[frozenset[int]]:
    """All normal subgroups, found as closures of unions of conjugacy classes."""
    classes = sorted({conjugacy_class(g, x) for x in range(g.order)}, key=lambda c: (len(c), min(c)))
    found = {frozenset({0})}
    frontier = [frozenset({0})]
    while frontier:
        nxt = []
        for n in frontier:
            for c in classes:
                if c <= n:
                    continue
                # normal closure of n and c is generated by n and the class
                k = subgroup_generated(g, n | c)
                if k not in found:
                    found.add(k)
                    nxt.append(k)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def quotient_group(g: CayleyGroup, n: Iterable[int]) -> tuple[CayleyGroup, tuple[int, ...]]:
    """Table of G/N over cosets (identity coset at 0) and the projection map."""
    n = frozenset(n)
    if not is_normal(g, n):
        raise ValueError("N is not a normal subgroup")
    coset_of = [-1] * g.order
    reps = []
    for x in range(g.order):
        if coset_of[x] == -1:
            k = len(reps)
            reps.append(x)
            for h in n:
                coset_of[g.table[x][h]] = k
    table = [[coset_of[g.table[a][b]] for b in reps] for a in reps]
    return CayleyGroup(table), tuple(coset_of)


def subgroup_as_group(g: CayleyGroup, elems: Iterable[int]) -> tuple[CayleyGroup, tuple[int, ...]]:
    """Relabel a subgroup as a standalone table; returns (group, new label -> old element)."""
    elems = sorted(set(elems))
    if elems[0] != 0:
        raise ValueError("subgroup must contain the identity")
    pos = {x: i for i, x in enumerate(elems)}
    table = [[pos[g.table[x][y]] for y in elems] for x in elems]
    return CayleyGroup(table), tuple(elems)


def relabel(g: CayleyGroup, perm: Sequence[int]) -> CayleyGroup:
    """Table of the same group with element x renamed perm[x]; perm[0] must be 0."""
    m = g.order
    inv = [0] * m
    for x, y in enumerate(perm):
        inv[y] = x
    return CayleyGroup([[perm[g.table[inv[a]][inv[b]]] for b in range(m)] for a in range(m)])


def word_for_elements(m: MarkedGroup) -> dict[int, Word]:
    """Shortest preimage word of every element; ties broken lexicographically.

    Breadth-first over letters in the order a, a^-1, b, b^-1, ...
    """
    t, inv = m.group.table, m.group.inverse
    words = {0: Word()}
    frontier = [0]
    letters = []
    for i in range(m.n):
        letters += [(i + 1, m.marking[i]), (-(i + 1), inv[m.marking[i]])]
    while frontier:
        nxt = []
        for x in sorted(frontier, key=lambda e: tuple(_lex_key(words[e]))):
            for letter, y in letters:
                z = t[x][y]
                if z not in words:
                    words[z] = Word(tuple(words[x]) + (letter,))
                    nxt.append(z)
        frontier = nxt
    return words


def _lex_key(w: Sequence[int]) -> list[int]:
    # a < a^-1 < b < b^-1 ...
    return [2 * (abs(x) - 1) + (0 if x > 0 else 1) for x in w]
