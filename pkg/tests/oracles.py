"""Independent reference computations used only by the tests."""
from collections import deque
from itertools import permutations, product

import sympy

from fq.finite.cayley import CayleyGroup, MarkedGroup, evaluate_word
from fq.finite.census import regular_permutation_census
from fq.profinite.lemma_b import x_seq, y_seq
from fq.profinite.turing import tm_run


def bfs_marked_key(m: MarkedGroup):
    """Relabel elements in BFS order over the marks; equal keys <=> marked isomorphic."""
    t, inv = m.group.table, m.group.inverse
    steps = []
    for s in m.marking:
        steps += [s, inv[s]]
    label = {0: 0}
    q = deque([0])
    while q:
        x = q.popleft()
        for s in steps:
            y = t[x][s]
            if y not in label:
                label[y] = len(label)
                q.append(y)
    if len(label) != m.order:
        return None
    back = sorted(label, key=label.get)
    table = tuple(tuple(label[t[back[i]][back[j]]] for j in range(m.order)) for i in range(m.order))
    return table, tuple(label[s] for s in m.marking)


def brute_marked_groups(n, max_order, relators=()):
    """All n-marked groups of order <= max_order via regular permutation groups."""
    keys = set()
    for order in range(1, max_order + 1):
        for g in regular_permutation_census(order):
            for marks in product(range(order), repeat=n):
                m = MarkedGroup(g, marks)
                k = bfs_marked_key(m)
                if k is None:
                    continue
                if all(evaluate_word(m, r) == 0 for r in relators):
                    keys.add(k)
    return keys


def brute_isomorphic(g: CayleyGroup, h: CayleyGroup) -> bool:
    if g.order != h.order:
        return False
    n = g.order
    for p in permutations(range(1, n)):
        f = (0,) + p
        if all(f[g.table[x][y]] == h.table[f[x]][f[y]] for x in range(n) for y in range(n)):
            return True
    return False


def stallings_index(words, n_gens):
    """Index of the subgroup of F_n generated by words, or None if infinite.

    Builds the bouquet of loops, folds it, and reads the index off the core
    graph when it is a finite cover.
    """
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = []
    fresh = [1]

    def new():
        v = fresh[0]
        fresh[0] += 1
        return v

    for w in words:
        cur = 0
        for i, letter in enumerate(w):
            nxt = 0 if i == len(w) - 1 else new()
            if letter > 0:
                edges.append((cur, letter, nxt))
            else:
                edges.append((nxt, -letter, cur))
            cur = nxt
    changed = True
    while changed:
        changed = False
        out, inn = {}, {}
        for (u, a, v) in edges:
            u, v = find(u), find(v)
            for table, key, other in ((out, (u, a), v), (inn, (v, a), u)):
                if key in table and find(table[key]) != other:
                    parent[find(table[key])] = other
                    changed = True
                else:
                    table[key] = other
    verts = {find(u) for (u, _, _) in edges} | {find(v) for (_, _, v) in edges} | {find(0)}
    out = {(find(u), a) for (u, a, _) in edges}
    if any((v, a) not in out for v in verts for a in range(1, n_gens + 1)):
        return None
    return len(verts)


def window_bitmap(f, w, n_terms=40):
    # B restricted to [-w, w]; index i <-> integer i - w
    bm = bytearray(2 * w + 1)
    for n in range(1, n_terms + 1):
        k = f(n)
        if n > 4:
            # x_n > 2w + y_k here, so the term meets the window in y_k alone
            if k <= 5:
                bm[y_seq(k) + w] = 1
            continue
        y = y_seq(k)
        x = x_seq(n)
        start = (y + w) % x
        bm[start::x] = b"\x01" * len(range(start, 2 * w + 1, x))
    return bm


def members_by_definition(reg, bound):
    """A in [1, bound], built forward from the machines' run lengths."""
    out = set()
    n = 1
    while sympy.prime(2 * n) <= bound:
        pe, po = sympy.prime(2 * n), sympy.prime(2 * n + 1)
        k = 1
        while pe ** k <= bound:
            if not tm_run(reg[n], k - 1).halted:
                out.add(pe ** k)
            k += 1
        budget = 1
        while po ** (budget + 1) <= bound:
            r = tm_run(reg[n], budget)
            if r.halted:
                if po ** (r.steps + 1) <= bound:
                    out.add(po ** (r.steps + 1))
                break
            budget += 1
        n += 1
    return out
