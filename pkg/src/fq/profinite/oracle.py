"""Effective subsets of Z behind one interface.

``member(x)`` answers True, False or None (unknown); ``mod_n(n)`` returns the
image in Z/n with a completeness flag; ``witness(x)`` returns b with
(x + bZ) disjoint from the set, when one is known.
"""
from __future__ import annotations

import os
from functools import reduce
from typing import Callable, Iterable, Optional

from ..core.verdict import Budget, Outcome
from .fasth import H_FUNCTIONS, fasth_member, fasth_mod_n
from .lemma55 import a55_member, a55_mod_n, a55_witness
from .lemma_b import IndexFunction, b_member, complement_mod_n, index_function, x_seq
from .progressions import Progression, lcm, residues_mod
from .turing import Registry, default_registry, load_registry, sample_registry


class ZSetOracle:
    kind = "abstract"
    spec = ""

    def member(self, x: int, budget: Optional[Budget] = None) -> Optional[bool]:
        raise NotImplementedError

    def mod_n(self, n: int, budget: Optional[Budget] = None) -> tuple[set[int], bool]:
        raise NotImplementedError

    def witness(self, x: int, budget: Optional[Budget] = None) -> Optional[int]:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.spec!r})"


class FiniteSet(ZSetOracle):
    kind = "finite"

    def __init__(self, elems: Iterable[int]):
        self.elems = frozenset(int(x) for x in elems)
        self.spec = "finite:" + ",".join(str(x) for x in sorted(self.elems))

    def member(self, x, budget=None):
        return x in self.elems

    def mod_n(self, n, budget=None):
        return {x % n for x in self.elems}, True

    def witness(self, x, budget=None):
        if x in self.elems:
            return None
        diffs = [abs(a - x) for a in self.elems]
        b = 1 if not diffs else 2
        while any(d % b == 0 for d in diffs):
            b += 1
        return b


class ProgressionSet(ZSetOracle):
    kind = "prog"

    def __init__(self, progs: Iterable[Progression]):
        self.progs = tuple(sorted(set(progs)))
        self.spec = "prog:" + ",".join(f"{p.a}/{p.b}" for p in self.progs)

    def member(self, x, budget=None):
        return any(x in p for p in self.progs)

    def mod_n(self, n, budget=None):
        return residues_mod(self.progs, n), True

    def witness(self, x, budget=None):
        if self.member(x):
            return None
        return reduce(lcm, (p.b for p in self.progs), 1)


class BComplement(ZSetOracle):
    """A = Z - B: closed, co-re, with A mod n computable."""

    kind = "lemmaB"

    def __init__(self, f: IndexFunction):
        self.f = f
        self.spec = f"lemmaB:f={f.name}"

    def member(self, x, budget=None):
        v = b_member(x, self.f, budget or Budget())
        if v.outcome is Outcome.YES:
            return False
        if v.outcome is Outcome.NO:
            return True
        return None

    def mod_n(self, n, budget=None):
        return complement_mod_n(n, self.f), True

    def witness(self, x, budget=None):
        v = b_member(x, self.f, budget or Budget())
        if v.outcome is Outcome.YES:
            return x_seq(v.certificate["n"])  # x + x_n Z is a term of B
        return None


class MachineSet(ZSetOracle):
    """Recursive and effectively closed; A mod n only approximable."""

    kind = "lemma55"

    def __init__(self, registry: Registry, step_budget: int = 64):
        self.registry = registry
        self.step_budget = step_budget
        self.spec = f"lemma55:registry={registry.name}"

    def member(self, x, budget=None):
        return a55_member(x, self.registry)

    def mod_n(self, n, budget=None):
        steps = budget.steps if budget is not None else self.step_budget
        residues, complete, _ = a55_mod_n(n, self.registry, min(steps, self.step_budget))
        return residues, complete

    def witness(self, x, budget=None):
        if a55_member(x, self.registry):
            return None
        return a55_witness(x, self.registry)


class FastHSet(ZSetOracle):
    """Dense in the profinite topology: closure is Z, so no witnesses exist."""

    kind = "fasth"

    def __init__(self, name: str = "pow10", h: Optional[Callable[[int], int]] = None):
        self.h = h or H_FUNCTIONS[name]
        self.spec = f"fasth:{name}"

    def member(self, x, budget=None):
        return fasth_member(x, self.h)

    def mod_n(self, n, budget=None):
        return fasth_mod_n(n), True

    def witness(self, x, budget=None):
        return None


def parse_zset(text: str) -> ZSetOracle:
    """Parse ``finite:1,5,9``, ``prog:0/4,2/6``, ``lemmaB:f=identity``,
    ``lemma55:registry=test`` (or a JSON registry path), ``fasth:pow10``."""
    kind, _, arg = text.partition(":")
    kind = kind.strip()
    arg = arg.strip()
    if kind == "finite":
        return FiniteSet(int(t) for t in arg.split(",") if t.strip())
    if kind == "prog":
        progs = []
        for t in arg.split(","):
            if not t.strip():
                continue
            a, _, b = t.partition("/")
            progs.append(Progression(int(a), int(b)))
        return ProgressionSet(progs)
    if kind == "lemmaB":
        key, _, value = arg.partition("=")
        if key != "f":
            raise ValueError("lemmaB takes f=identity|const1|halfn|default")
        return BComplement(index_function(value))
    if kind == "lemma55":
        key, _, value = arg.partition("=")
        if key != "registry":
            raise ValueError("lemma55 takes registry=default|test|<file.json>")
        if value == "default":
            reg = default_registry()
        elif value == "test":
            reg = sample_registry()
        elif os.path.exists(value):
            with open(value) as fh:
                reg = load_registry(fh.read())
        else:
            raise ValueError(f"unknown registry {value!r}")
        return MachineSet(reg)
    if kind == "fasth":
        if arg not in H_FUNCTIONS:
            raise ValueError(f"unknown growth function {arg!r}")
        return FastHSet(arg)
    raise ValueError(f"unknown set kind {kind!r}")
