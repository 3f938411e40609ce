"""Arithmetic progressions a + bZ, the basic open sets of the profinite topology on Z."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@dataclass(frozen=True, order=True)
class Progression:
    a: int
    b: int

    def __init__(self, a: int, b: int):
        if b < 1:
            raise ValueError("modulus must be >= 1")
        object.__setattr__(self, "b", int(b))
        object.__setattr__(self, "a", int(a) % int(b))

    def __contains__(self, x: int) -> bool:
        return (x - self.a) % self.b == 0

    def __str__(self) -> str:
        return f"{self.a}+{self.b}Z"

    def intersect(self, other: "Progression") -> Optional["Progression"]:
        return intersect(self, other)

    def is_subset(self, other: "Progression") -> bool:
        return self.b % other.b == 0 and (self.a - other.a) % other.b == 0


def crt(a1: int, m1: int, a2: int, m2: int) -> Optional[tuple[int, int]]:
    """Solve x = a1 mod m1, x = a2 mod m2; returns (x, lcm) or None."""
    g = gcd(m1, m2)
    if (a2 - a1) % g:
        return None
    l = lcm(m1, m2)
    # x = a1 + m1 * t with m1 t = a2 - a1 mod m2
    m1g, m2g = m1 // g, m2 // g
    t = ((a2 - a1) // g * pow(m1g, -1, m2g)) % m2g if m2g > 1 else 0
    return (a1 + m1 * t) % l, l


def intersect(p: Progression, q: Progression) -> Optional[Progression]:
    r = crt(p.a, p.b, q.a, q.b)
    return None if r is None else Progression(*r)


def residues_mod(progs: Iterable[Progression], n: int) -> set[int]:
    """Residues r mod n such that r + nZ meets the union of ``progs``."""
    out = set()
    for p in progs:
        g = gcd(p.b, n)
        out.update(r for r in range(n) if (r - p.a) % g == 0)
    return out


def split(p: Progression, m: int) -> list[Progression]:
    """Refine p into progressions with modulus lcm(p.b, m)."""
    l = lcm(p.b, m)
    return [Progression(p.a + k * p.b, l) for k in range(l // p.b)]
