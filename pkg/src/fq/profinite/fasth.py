"""A determinable set that is not re, given a fast-growing h.

Block m (m = 2, 3, ...) emits m h(j) + r for r = 0..m-1 with a running
index j.  Every residue class mod n is hit inside block n, so the image
mod n is all of Z/n for every n; if h outgrows every recursive function
the set itself is not re.  Here h is a pluggable total function.
"""
from __future__ import annotations

from typing import Callable, Iterator


def pow10(j: int) -> int:
    return 10 ** j


H_FUNCTIONS: dict[str, Callable[[int], int]] = {"pow10": pow10}


def fasth_iter(h: Callable[[int], int]) -> Iterator[int]:
    j = 1
    m = 2
    while True:
        for r in range(m):
            yield m * h(j) + r
            j += 1
        m += 1


def fasth_stream(h: Callable[[int], int], count: int) -> list[int]:
    if count < 0:
        raise ValueError("count must be >= 0")
    out = []
    it = fasth_iter(h)
    for _ in range(count):
        out.append(next(it))
    return out


def fasth_mod_n(n: int) -> set[int]:
    if n < 1:
        raise ValueError("n must be >= 1")
    return set(range(n))


def fasth_member(x: int, h: Callable[[int], int]) -> bool:
    """Exact for h with an increasing stream (as for pow10)."""
    if x < 0:
        return False
    for v in fasth_iter(h):
        if v == x:
            return True
        if v > x:
            return False
    return False  # pragma: no cover
