"""Semidecision of "w is a consequence of the relators".

The search walks from ``w`` towards the empty word.  A move inserts a cyclic
rotation of a relator (or its inverse) at some position and freely reduces.
Inserting ``t s`` after the prefix ``x`` of ``u``, where ``r = s t``, is left
multiplication of ``u`` by the conjugate ``(x s^-1) r (x s^-1)^-1``, so every
path to the empty word yields an explicit product of conjugates of relators.
Words are expanded shortest first; each length level is finite, so any
derivation is eventually found.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Optional, Sequence

from .presentation import Presentation
from .verdict import Budget, Outcome, Verdict
from .words import Word, free_reduce


@dataclass(frozen=True)
class Factor:
    conjugator: Word
    relator: int
    sign: int

    def expand(self, p: Presentation) -> Word:
        r = p.relators[self.relator]
        if self.sign < 0:
            r = r.inverse()
        return free_reduce(self.conjugator + r + self.conjugator.inverse())


def expand_factors(p: Presentation, factors: Sequence[Factor]) -> Word:
    out: list[int] = []
    for f in factors:
        out += f.expand(p)
    return free_reduce(out)


def _reduce_into(prefix: tuple, middle: tuple, suffix: tuple) -> tuple:
    out = list(prefix)
    for x in middle + suffix:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


class DerivationSearch:
    """Resumable best-first search; call :meth:`step` until it returns factors."""

    def __init__(self, p: Presentation, w: Sequence[int]):
        self.p = p
        self.target = free_reduce(w)
        self.moves = []  # (rotation, s^-1, relator index, sign)
        for idx, r in enumerate(p.relators):
            for sign in (1, -1):
                rr = tuple(r) if sign > 0 else tuple(r.inverse())
                seen = set()
                for j in range(len(rr)):
                    rot = rr[j:] + rr[:j]
                    if rot in seen:
                        continue
                    seen.add(rot)
                    s_inv = tuple(-x for x in reversed(rr[:j]))
                    self.moves.append((rot, s_inv, idx, sign))
        start = tuple(self.target)
        self.parent: dict[tuple, Optional[tuple]] = {start: None}
        self.heap = [(len(start), 0, start)]
        self.steps = 0
        self.result: Optional[list[Factor]] = None
        if not start:
            self.result = []

    def _trace(self, end: tuple) -> list[Factor]:
        factors = []
        node = end
        while self.parent[node] is not None:
            prev, conj, idx, sign = self.parent[node]
            factors.append(Factor(Word(conj), idx, -sign))
            node = prev
        factors.reverse()
        return factors

    def step(self) -> Optional[list[Factor]]:
        if self.result is not None:
            return self.result
        if not self.heap or not self.moves:
            self.steps += 1
            return None
        self.steps += 1
        _, depth, u = heapq.heappop(self.heap)
        for k in range(len(u) + 1):
            x, y = u[:k], u[k:]
            for rot, s_inv, idx, sign in self.moves:
                v = _reduce_into(x, rot, y)
                if v in self.parent:
                    continue
                self.parent[v] = (u, free_reduce(x + s_inv), idx, sign)
                if not v:
                    self.result = self._trace(v)
                    return self.result
                heapq.heappush(self.heap, (len(v), depth + 1, v))
        return None


def derives_identity(p: Presentation, w: Sequence[int], budget: Budget) -> Verdict:
    """Yes with a product-of-conjugates certificate, or Unknown; never No."""
    search = DerivationSearch(p, w)
    while search.steps < budget.steps:
        found = search.step()
        if found is not None:
            return Verdict(Outcome.YES, {"kind": "derivation", "factors": found}, search.steps)
    if search.result is not None:
        return Verdict(Outcome.YES, {"kind": "derivation", "factors": search.result}, search.steps)
    return Verdict.unknown(budget, search.steps)


def check_derivation(p: Presentation, w: Sequence[int], factors: Sequence[Factor]) -> bool:
    return all(0 <= f.relator < len(p.relators) for f in factors) and expand_factors(p, factors) == free_reduce(w)
