"""Isomorphism classes of finite groups of small order, as canonical tables.

Three ways of producing the groups of order m live here:

* ``backtrack_tables`` fills a Cayley table cell by cell, propagating
  associativity and only ever introducing the least unused element name.
  Fast up to order 12, hopeless much beyond.
* ``extension_tables`` builds every group with a normal subgroup of prime
  index p as N * <t> with ``t n t^-1 = sigma(n)`` and ``t^p = c``.  Every
  group of order below 60 is solvable and so arises this way.
* ``regular_permutation_census`` closes generator tuples inside S_m and keeps
  the regular subgroups.  It is slow and only used as a cross-check.

A group is stored in canonical form: among all generating tuples of minimum
size (with lexicographically least sequence of element orders), label the
elements breadth first from each tuple and keep the lexicographically least
resulting table.  Tuples that achieve the minimum give the automorphisms.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import permutations, product
from typing import Iterator, Optional, Sequence

from .cayley import CapExceeded, CayleyGroup, subgroup_generated

DEFAULT_CAP = 12
# every group of order < 60 is solvable, so the extension method is complete
EXTENSION_LIMIT = 59
BACKTRACK_LIMIT = 12


# -- backend (a): table backtracking --------------------------------------

def backtrack_tables(m: int) -> Iterator[list[list[int]]]:
    """Yield group tables of order m, one or more per isomorphism class.

    Cells are filled in row-major order and a cell may only take a value that
    is already mentioned or the least unmentioned one, which kills most
    relabelings.  Each assignment is propagated through the associativity
    constraints ``x(yw) = (xy)w``.
    """
    if m == 1:
        yield [[0]]
        return
    T = [[-1] * m for _ in range(m)]
    row_used = [[False] * m for _ in range(m)]
    col_used = [[False] * m for _ in range(m)]
    for i in range(m):
        T[0][i] = i
        T[i][0] = i
        row_used[0][i] = row_used[i][i] = True
        col_used[i][i] = col_used[0][i] = True
    trail: list[tuple[int, int, int]] = []

    def assign(x, y, z) -> bool:
        stack = [(x, y, z)]
        while stack:
            x, y, z = stack.pop()
            cur = T[x][y]
            if cur != -1:
                if cur != z:
                    return False
                continue
            if row_used[x][z] or col_used[y][z]:
                return False
            T[x][y] = z
            row_used[x][z] = col_used[y][z] = True
            trail.append((x, y, z))
            Tz, Ty, Tx = T[z], T[y], T[x]
            for w in range(m):
                # (xy)w = x(yw)
                v = Ty[w]
                if v != -1:
                    t, s = Tz[w], Tx[v]
                    if t != -1:
                        if s == -1:
                            stack.append((x, v, t))
                        elif s != t:
                            return False
                    elif s != -1:
                        stack.append((z, w, s))
                # (wx)y = w(xy)
                v = T[w][x]
                if v != -1:
                    t, s = T[v][y], T[w][z]
                    if t != -1:
                        if s == -1:
                            stack.append((w, z, t))
                        elif s != t:
                            return False
                    elif s != -1:
                        stack.append((v, y, s))
        return True

    def undo(n):
        while len(trail) > n:
            x, y, z = trail.pop()
            T[x][y] = -1
            row_used[x][z] = col_used[y][z] = False

    def rec(mentioned):
        cell = None
        for x in range(1, m):
            row = T[x]
            for y in range(1, m):
                if row[y] == -1:
                    cell = (x, y)
                    break
            if cell:
                break
        if cell is None:
            yield [row[:] for row in T]
            return
        x, y = cell
        mx = max(mentioned, x, y)
        for z in range(min(mx + 2, m)):
            n = len(trail)
            if assign(x, y, z):
                nm = mx
                for a, b, c in trail[n:]:
                    nm = max(nm, a, b, c)
                yield from rec(nm)
            undo(n)

    yield from rec(0)


# -- backend: cyclic extensions ---------------------------------------------

def extension_tables(m: int, p: int, base: CayleyGroup) -> Iterator[list[list[int]]]:
    """Groups G with a normal subgroup N = ``base`` of index p.

    Element ``n + k * i`` (k = |N|) stands for ``n t^i``; the data is an
    automorphism sigma of N and c in N with sigma(c) = c, sigma^p = inn(c).
    """
    k = base.order
    if k * p != m:
        raise ValueError("order mismatch")
    T, inv = base.table, base.inverse
    for sigma in automorphisms(base):
        powers = [tuple(range(k))]
        for _ in range(p):
            prev = powers[-1]
            powers.append(tuple(sigma[prev[x]] for x in range(k)))
        sp = powers[p]
        for c in range(k):
            if sigma[c] != c:
                continue
            if any(sp[x] != T[T[c][x]][inv[c]] for x in range(k)):
                continue
            table = []
            for i in range(p):
                si = powers[i]
                for n in range(k):
                    row = []
                    for j in range(p):
                        wrap = i + j >= p
                        for n2 in range(k):
                            e = T[n][si[n2]]
                            if wrap:
                                e = T[e][c]
                            row.append(e + k * ((i + j) % p))
                    table.append(row)
            yield table


# -- invariants and isomorphism ---------------------------------------------

def invariant(g: CayleyGroup) -> tuple:
    """Isomorphism invariant: multiset of (order, centralizer size, #square roots)."""
    t = g.table
    m = g.order
    orders = g.element_orders
    roots = Counter(t[x][x] for x in range(m))
    data = []
    for x in range(m):
        cent = sum(1 for y in range(m) if t[x][y] == t[y][x])
        data.append((orders[x], cent, roots[x]))
    return tuple(sorted(data))


def generating_tuple(g: CayleyGroup) -> tuple[int, ...]:
    """A short generating tuple, chosen greedily by decreasing element order."""
    if g.order == 1:
        return ()
    elems = sorted(range(1, g.order), key=lambda x: (-g.element_orders[x], x))
    gens: list[int] = []
    sub = frozenset({0})
    for x in elems:
        if x not in sub:
            gens.append(x)
            sub = subgroup_generated(g, gens)
            if len(sub) == g.order:
                break
    return tuple(gens)


def bfs_labels(g: CayleyGroup, gens: Sequence[int]) -> Optional[list[int]]:
    """Elements in order of discovery from the identity under right multiplication."""
    t = g.table
    order = [0]
    seen = [False] * g.order
    seen[0] = True
    i = 0
    while i < len(order):
        row = t[order[i]]
        for s in gens:
            y = row[s]
            if not seen[y]:
                seen[y] = True
                order.append(y)
        i += 1
    return order if len(order) == g.order else None


def find_isomorphism(g: CayleyGroup, h: CayleyGroup) -> Optional[tuple[int, ...]]:
    """Some isomorphism g -> h as an element map, or None."""
    if g.order != h.order:
        return None
    if Counter(g.element_orders) != Counter(h.element_orders):
        return None
    gens = generating_tuple(g)
    if not gens:
        return (0,)
    order_g = bfs_labels(g, gens)
    # parent[x] = (y, s) with x = y * gens[s]
    parent = {0: None}
    tg = g.table
    for x in order_g:
        for si, s in enumerate(gens):
            y = tg[x][s]
            if y not in parent:
                parent[y] = (x, si)
    th = h.table
    candidates = [[y for y in range(h.order) if h.element_orders[y] == g.element_orders[s]] for s in gens]
    for images in product(*candidates):
        phi = [-1] * g.order
        phi[0] = 0
        for x in order_g[1:]:
            y, si = parent[x]
            phi[x] = th[phi[y]][images[si]]
        if len(set(phi)) != g.order:
            continue
        ok = True
        for x in range(g.order):
            px = phi[x]
            for si, s in enumerate(gens):
                if phi[tg[x][s]] != th[px][images[si]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return tuple(phi)
    return None


def is_isomorphic(g: CayleyGroup, h: CayleyGroup) -> bool:
    return find_isomorphism(g, h) is not None


# -- canonical form ---------------------------------------------------------

def _candidate_tuples(g: CayleyGroup) -> list[tuple[int, ...]]:
    m = g.order
    if m == 1:
        return [()]
    orders = g.element_orders
    for d in range(1, m):
        best_key = None
        found = []
        for tup in product(range(1, m), repeat=d):
            key = tuple(orders[x] for x in tup)
            if best_key is not None and key > best_key:
                continue
            if len(subgroup_generated(g, tup)) != m:
                continue
            if best_key is None or key < best_key:
                best_key, found = key, [tup]
            else:
                found.append(tup)
        if found:
            return found
    raise AssertionError("unreachable: the whole group generates itself")


@lru_cache(maxsize=None)
def _canonical(g: CayleyGroup) -> tuple[CayleyGroup, tuple[tuple[int, ...], ...]]:
    m = g.order
    t = g.table
    best: Optional[list[tuple[int, ...]]] = None
    winners: list[tuple[int, ...]] = []
    for tup in _candidate_tuples(g):
        order = bfs_labels(g, tup)
        label = [0] * m
        for i, x in enumerate(order):
            label[x] = i
        rows = []
        state = 0  # 0 tie so far, -1 smaller
        for r in range(m):
            row_r = t[order[r]]
            row = tuple(label[row_r[order[c]]] for c in range(m))
            if best is not None and state == 0:
                if row > best[r]:
                    state = 1
                    break
                if row < best[r]:
                    state = -1
            rows.append(row)
        if state == 1:
            continue
        if best is None or state == -1:
            best, winners = rows, [tuple(label)]
        else:
            winners.append(tuple(label))
    return CayleyGroup(best), tuple(winners)


def canonical_form(g: CayleyGroup) -> CayleyGroup:
    return _canonical(g)[0]


def canonical_isomorphism(g: CayleyGroup) -> tuple[int, ...]:
    """An isomorphism from g onto canonical_form(g), as an element map."""
    return _canonical(g)[1][0]


@lru_cache(maxsize=None)
def automorphisms(g: CayleyGroup) -> tuple[tuple[int, ...], ...]:
    """All automorphisms of g as element maps, the identity first."""
    canon, isos = _canonical(g)
    phi0 = isos[0]
    m = g.order
    inv0 = [0] * m
    for x, y in enumerate(phi0):
        inv0[y] = x
    # phi0^-1 . psi is an automorphism for every optimal labeling psi
    auts = sorted({tuple(inv0[psi[x]] for x in range(m)) for psi in isos})
    ident = tuple(range(m))
    auts.remove(ident)
    return (ident, *auts)


def table_key(g: CayleyGroup) -> tuple:
    return tuple(x for row in g.table for x in row)


# -- the census --------------------------------------------------------------

def _prime_divisors(m: int) -> list[int]:
    out, q, k = [], 2, m
    while q * q <= k:
        if k % q == 0:
            out.append(q)
            while k % q == 0:
                k //= q
        q += 1
    if k > 1:
        out.append(k)
    return out


def _dedupe(tables) -> list[CayleyGroup]:
    buckets: dict[tuple, list[CayleyGroup]] = {}
    for tab in tables:
        g = CayleyGroup(tab)
        key = invariant(g)
        reps = buckets.setdefault(key, [])
        if not any(is_isomorphic(g, h) for h in reps):
            reps.append(g)
    return [h for reps in buckets.values() for h in reps]


@lru_cache(maxsize=None)
def _census(m: int, method: str) -> tuple[CayleyGroup, ...]:
    if m == 1:
        raw = [CayleyGroup([[0]])]
    elif method == "backtrack":
        raw = _dedupe(backtrack_tables(m))
    else:
        def gen():
            for p in _prime_divisors(m):
                for base in _census(m // p, method):
                    yield from extension_tables(m, p, base)
        raw = _dedupe(gen())
    return tuple(sorted((canonical_form(g) for g in raw), key=table_key))


def groups_of_order(m: int, cap: int = DEFAULT_CAP, method: str = "auto") -> tuple[CayleyGroup, ...]:
    """Canonical representatives of the groups of order m, sorted by table.

    ``method`` is "backtrack", "extension" or "auto" (backtracking where it is
    fast, extensions above).
    """
    if m < 1:
        raise ValueError("order must be >= 1")
    if m > cap:
        raise CapExceeded(f"order {m} exceeds the feasibility cap {cap}")
    if method == "auto":
        method = "backtrack" if m <= BACKTRACK_LIMIT else "extension"
    if method == "extension" and m > EXTENSION_LIMIT:
        raise CapExceeded(f"order {m} is beyond what the extension method covers")
    if method not in ("backtrack", "extension"):
        raise ValueError(f"unknown census method {method!r}")
    return _census(m, method)


def census_counts(max_order: int, cap: int = DEFAULT_CAP, method: str = "auto") -> list[int]:
    return [len(groups_of_order(m, cap, method)) for m in range(1, max_order + 1)]


def census_index(g: CayleyGroup) -> int:
    """Position of a canonical group inside the census of its order."""
    return groups_of_order(g.order, cap=max(g.order, DEFAULT_CAP)).index(g)


# -- backend (b): regular permutation groups --------------------------------

def _perm_mul(p: tuple, q: tuple) -> tuple:
    # apply p then q
    return tuple(q[i] for i in p)


def _closure(gens: Sequence[tuple], limit: int) -> Optional[set]:
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = _perm_mul(x, s)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > limit:
                        return None
                    nxt.append(y)
        frontier = nxt
    return seen


def _semiregular(p: tuple) -> bool:
    m = len(p)
    lengths = set()
    seen = [False] * m
    for i in range(m):
        if not seen[i]:
            j, k = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                k += 1
            lengths.add(k)
    return len(lengths) == 1


def _perm_group_table(elems) -> CayleyGroup:
    m = len(elems[0])
    ident = tuple(range(m))
    elems = [ident] + sorted(e for e in elems if e != ident)
    pos = {e: i for i, e in enumerate(elems)}
    return CayleyGroup([[pos[_perm_mul(x, y)] for y in elems] for x in elems])


def regular_permutation_census(m: int) -> list[CayleyGroup]:
    """Groups of order m as regular subgroups of S_m, one per isomorphism type.

    Subgroups grow one semiregular generator at a time.  A semiregular group
    is determined up to conjugacy in S_m by its isomorphism type, so keeping
    one subgroup per type at each stage loses nothing.
    """
    if m == 1:
        return [CayleyGroup([[0]])]
    perms = [p for p in permutations(range(m)) if _semiregular(p) and p != tuple(range(m))]
    ident = tuple(range(m))
    reps: dict[int, list[tuple[CayleyGroup, list]]] = {1: [(CayleyGroup([[0]]), [ident])]}
    frontier = [[ident]]
    while frontier:
        nxt = []
        for gens in frontier:
            group = _closure(gens, m)
            for p in perms:
                if p in group:
                    continue
                new = _closure(gens + [p], m)
                if new is None or m % len(new) or not all(_semiregular(x) for x in new):
                    continue
                tab = _perm_group_table(list(new))
                known = reps.setdefault(len(new), [])
                if any(is_isomorphic(tab, h) for h, _ in known):
                    continue
                known.append((tab, gens + [p]))
                if len(new) < m:
                    nxt.append(gens + [p])
        frontier = nxt
    return [h for h, _ in reps.get(m, [])]
