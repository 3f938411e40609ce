"""A recursive closed set A of Z whose residues mod n are not computable in n.

Machine n contributes p_{2n}, p_{2n}^2, ... one power per computation step,
and if it halts at step k the list ends with p_{2n+1}^(k+1).  So 0 lies in
A mod p_{2n+1} exactly when machine n halts.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import sympy

from .lemma_b import nth_prime, prime_index
from .turing import Registry, tm_run


class PreconditionViolated(ValueError):
    pass


def prime_power(x: int) -> Optional[tuple[int, int]]:
    """(p, e) with x = p^e, e >= 1, for x > 1; otherwise None."""
    if x < 2:
        return None
    f = sympy.factorint(x)
    if len(f) != 1:
        return None
    (p, e), = f.items()
    return int(p), int(e)


def _owner(p: int) -> tuple[int, bool]:
    """(machine index n, is_even_slot) for p = p_{2n} or p_{2n+1}; n = 0 for p = 2."""
    j = prime_index(p)
    return j // 2, j % 2 == 0


def a55_member(x: int, registry: Registry) -> bool:
    """Decide x in A.  Runs machine n for at most max(k, k - 1) steps."""
    pe = prime_power(x)
    if pe is None:
        return False
    p, e = pe
    n, even = _owner(p)
    if n == 0:
        return False  # p = 2 carries no machine
    m = registry[n]
    if even:
        # p_{2n}^e is produced iff the machine runs at least e steps
        res = tm_run(m, e - 1)
        return not res.halted
    # p_{2n+1}^e with e = k + 1, k the exact halting step
    k = e - 1
    if k < 1:
        return False
    res = tm_run(m, k)
    return res.halted and res.steps == k


@dataclass(frozen=True)
class MemberCertificate:
    """x = p^e produced by machine n (trace: halting step or steps survived)."""

    x: int
    machine: int
    prime: int
    exponent: int
    halted_at: Optional[int]


def a55_certificate(x: int, registry: Registry) -> Optional[MemberCertificate]:
    if not a55_member(x, registry):
        return None
    p, e = prime_power(x)
    n, even = _owner(p)
    halted_at = None if even else e - 1
    return MemberCertificate(x, n, p, e, halted_at)


def a55_witness(x: int, registry: Registry) -> Optional[int]:
    """A modulus b with (x + bZ) disjoint from A, or None for x = +-1.

    Precondition: x not in A.
    """
    if a55_member(x, registry):
        raise PreconditionViolated(f"{x} is in A; it has no separating modulus")
    if x % 2 == 0:
        return 2  # A has only odd elements
    ax = abs(x)
    if ax == 1:
        return None  # every class 1 + bZ holds primes; see the decisions ledger
    pe = prime_power(ax)
    if pe is None:
        return ax  # several prime divisors, and so does every multiple
    p, e = pe
    n, even = _owner(p)
    if even and x > 0:
        # the machine stopped before step e: A only holds p^j with j < e
        return ax
    # x + p x Z: p-valuation exactly e and cofactor = +-1 mod p
    return p * ax


def a55_members_up_to(registry: Registry, machines: int, steps: int) -> list[MemberCertificate]:
    """Members produced by machines 1..machines within ``steps`` steps each."""
    out = []
    for n in range(1, machines + 1):
        m = registry[n]
        res = tm_run(m, steps)
        pe, po = nth_prime(2 * n), nth_prime(2 * n + 1)
        produced = res.steps
        for k in range(1, produced + 1):
            out.append(MemberCertificate(pe ** k, n, pe, k, None))
        if res.halted:
            k = res.steps
            out.append(MemberCertificate(po ** (k + 1), n, po, k + 1, k))
    return out


def a55_mod_n(n: int, registry: Registry, step_budget: int) -> tuple[set[int], bool, dict]:
    """Lower approximation of A mod n.

    Residues are reported only with a member certificate.  A residue r is
    ruled out when r or r + n is outside A with a witness dividing n.
    Returns (residues, complete, details).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    members = a55_members_up_to(registry, step_budget, step_budget)
    present: dict[int, MemberCertificate] = {}
    for c in members:
        present.setdefault(c.x % n, c)
    excluded: dict[int, int] = {}
    for r in range(n):
        if r in present:
            continue
        for rep in (r, r + n):
            if a55_member(rep, registry):
                continue
            b = a55_witness(rep, registry)
            if b is not None and n % b == 0:
                excluded[r] = b
                break
    complete = len(present) + len(excluded) == n
    details = {"members": present, "excluded": excluded,
               "undecided": sorted(set(range(n)) - set(present) - set(excluded))}
    return set(present), complete, details
