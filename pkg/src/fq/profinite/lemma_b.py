"""An open set B of Z that is re but not co-re, with decidable "a + bZ in B".

With p_n the n-th prime, x_0 = 1, x_n = p_n x_{n-1}^2 and y_n = x_{n-1},

    B = union over n >= 1 of  y_{f(n)} + x_n Z

for a total f with 1 <= f(n) <= n.  The exponent of p_j in x_n is 2^(n-j)
for j <= n, so every element of y_k + x_n Z (k <= n) is divisible by
p_1 .. p_{k-1} and not by p_k.  Call that k the "level" of the element.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import ceil
from typing import Callable, Optional

import sympy

from ..core.verdict import Budget, Outcome, Verdict
from .progressions import Progression, crt
from .turing import default_registry, tm_run


class InvalidIndexFunction(ValueError):
    pass


def nth_prime(n: int) -> int:
    if n < 1:
        raise ValueError("primes are indexed from 1 (p_1 = 2)")
    return int(sympy.prime(n))


def prime_index(p: int) -> int:
    """k with p = p_k, for a prime p."""
    return int(sympy.primepi(p))


@lru_cache(maxsize=None)
def x_seq(n: int) -> int:
    if n < 0:
        raise ValueError("x_n needs n >= 0")
    if n == 0:
        return 1
    return nth_prime(n) * x_seq(n - 1) ** 2


def y_seq(n: int) -> int:
    if n < 1:
        raise ValueError("y_n needs n >= 1")
    return x_seq(n - 1)


def xy_sequences(n: int) -> tuple[int, int]:
    """(x_n, y_n); y_0 is undefined and reported as None."""
    return x_seq(n), (y_seq(n) if n >= 1 else None)


def x_divides(n: int, m: int) -> bool:
    """Does x_n divide m?  Decided from exponents, without building x_n."""
    if m == 0:
        return True
    m = abs(m)
    for j in range(1, n + 1):
        e = 1 << (n - j)
        if e > m.bit_length():
            return False  # p^e > m
        p = nth_prime(j)
        if m % p ** e:
            return False
    return True


def level(z: int) -> Optional[int]:
    """Least k with p_k not dividing z (None for z = 0)."""
    if z == 0:
        return None
    k = 1
    while z % nth_prime(k) == 0:
        k += 1
    return k


# -- index functions ---------------------------------------------------------

@dataclass(frozen=True)
class IndexFunction:
    """A total function f with 1 <= f(n) <= n, checked on every call."""

    name: str
    fn: Callable[[int], int]

    def __call__(self, n: int) -> int:
        v = int(self.fn(n))
        if not 1 <= v <= n:
            raise InvalidIndexFunction(f"f({n}) = {v} is outside [1, {n}]")
        return v


def identity_f() -> IndexFunction:
    return IndexFunction("identity", lambda n: n)


def const1_f() -> IndexFunction:
    return IndexFunction("const1", lambda n: 1)


def halfn_f() -> IndexFunction:
    return IndexFunction("halfn", lambda n: ceil(n / 2))


def unpair(n: int) -> Optional[tuple[int, int]]:
    """Inverse of (m, s) -> T(m + s - 1) + m, T the triangular numbers.

    Diagonal d = m + s - 1 covers n = T(d) + 1 .. T(d) + d; the values
    n = T(d + 1) are not hit and give None.
    """
    d = 1
    while d * (d + 1) // 2 + d < n:
        d += 1
    base = d * (d + 1) // 2
    m = n - base
    if not 1 <= m <= d:
        return None
    return m, d - m + 1


def halting_f(registry=None) -> IndexFunction:
    """f(n) = m + 1 when n encodes (m, s) and machine m halts at exactly step s; else 1.

    Its image is {1} together with m + 1 for every halting machine m.
    """
    reg = registry if registry is not None else default_registry()

    def fn(n: int) -> int:
        pair = unpair(n)
        if pair is None:
            return 1
        m, s = pair
        if m + 1 > n:
            return 1
        res = tm_run(reg[m], s)
        return m + 1 if res.halted and res.steps == s else 1

    return IndexFunction("default", fn)


def index_function(name: str) -> IndexFunction:
    table = {"identity": identity_f, "const1": const1_f, "halfn": halfn_f, "default": halting_f}
    if name not in table:
        raise ValueError(f"unknown index function {name!r}; choose from {sorted(table)}")
    return table[name]()


# -- containment ---------------------------------------------------------------

def first_n_dividing(b: int) -> int:
    """Least N with b | x_N and b | y_N."""
    n = 1
    while not (x_seq_divisible(n, b) and x_seq_divisible(n - 1, b)):
        n += 1
    return n


def x_seq_divisible(n: int, b: int) -> bool:
    """Does b divide x_n?  (Exponent of p_j in x_n is 2^(n-j).)"""
    for p, e in sympy.factorint(b).items():
        j = prime_index(p)
        if j > n or (1 << (n - j)) < e:
            return False
    return True


def _pieces_in_c(prog: Progression, n_max: int) -> Optional[dict[int, Progression]]:
    """If prog lies in C_N = union_{k<=N} y_k + x_k Z, its parts by level; else None.

    prog is split by divisibility by p_1, p_2, ...: the part of level k must
    lie in y_k + x_k Z, the rest moves on to level k + 1.
    """
    pieces: dict[int, Progression] = {}
    cur: Optional[Progression] = prog
    for k in range(1, n_max + 1):
        if cur is None:
            return pieces
        p = nth_prime(k)
        if cur.b % p == 0:
            if cur.a % p == 0:
                continue  # everything moves on
            part = [cur]
            nxt = None
        else:
            part = [Progression(cur.a + t * cur.b, cur.b * p) for t in range(p)]
            nxt = next(q for q in part if q.a % p == 0)
            part = [q for q in part if q is not nxt]
        for q in part:
            if not (x_divides(k, q.b) and (q.a - y_seq(k)) % x_seq(k) == 0):
                return None
        if len(part) != 1:
            # distinct residues mod p cannot share a class mod x_k
            return None
        pieces[k] = part[0]
        cur = nxt
    return pieces if cur is None else None


def prog_subset_b(a: int, b: int, f: IndexFunction) -> bool:
    """Is a + bZ contained in B?"""
    if b < 1:
        raise ValueError("modulus must be >= 1")
    prog = Progression(a, b)
    if prog.a == 0:
        return False  # 0 is in a + bZ but not in B
    n_cap = first_n_dividing(b)
    pieces = _pieces_in_c(prog, n_cap)
    if pieces is None:
        return False
    for k in sorted(pieces):
        r = crt(prog.a, prog.b, y_seq(k), x_seq(k))
        if r is None:
            continue
        t, big = r
        g = _pseudo_inverse(f, k, big)
        if g is None:
            return False
        if not (big % x_seq(g) == 0 and (t - y_seq(k)) % x_seq(g) == 0):
            return False
    return True


def _pseudo_inverse(f: IndexFunction, k: int, bound: int) -> Optional[int]:
    """g(k) = min{n : f(n) = k} when x_{g(k)} can still divide ``bound``; else None.

    f(n) <= n forces g(k) >= k.  Once x_n no longer divides ``bound`` no
    later n can help, since x_n | x_{n+1}.
    """
    n = k
    while n <= bound and x_divides(n, bound):
        if f(n) == k:
            return n
        n += 1
    return None


def b_member(x: int, f: IndexFunction, budget: Budget) -> Verdict:
    """Semidecide x in B; only the points x = y_k can stay Unknown."""
    k = level(x)
    if k is None:
        return Verdict(Outcome.NO, {"kind": "b_exclusion", "reason": "zero"}, 0)
    xk, yk = x_seq(k), y_seq(k)
    if (x - yk) % xk:
        return Verdict(Outcome.NO, {"kind": "b_exclusion", "reason": "residue", "level": k}, 0)
    gap = abs(x - yk)
    n = k
    used = 0
    while used < budget.steps:
        if gap and not x_divides(n, gap):
            cert = {"kind": "b_exclusion", "reason": "bounded", "level": k, "checked_up_to": n - 1}
            return Verdict(Outcome.NO, cert, used)
        used += 1
        if f(n) == k and (gap == 0 or gap % x_seq(n) == 0):
            return Verdict(Outcome.YES, {"kind": "b_term", "n": n, "k": k}, used)
        n += 1
    return Verdict.unknown(budget, used)


def check_b_term(x: int, f: IndexFunction, cert: dict) -> bool:
    n = cert["n"]
    return f(n) == cert["k"] and (x - y_seq(f(n))) % x_seq(n) == 0


def complement_mod_n(n: int, f: IndexFunction) -> set[int]:
    """(Z - B) mod n, exactly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return {r for r in range(n) if not prog_subset_b(r, n, f)}


def b_window(f: IndexFunction, lo: int, hi: int, n_terms: int) -> set[int]:
    """Elements of the first ``n_terms`` terms of B lying in [lo, hi] (brute force)."""
    out = set()
    for n in range(1, n_terms + 1):
        yk, xn = y_seq(f(n)), x_seq(n)
        start = yk + ((lo - yk) // xn) * xn
        z = start
        while z <= hi:
            if z >= lo:
                out.add(z)
            z += xn
    return out
