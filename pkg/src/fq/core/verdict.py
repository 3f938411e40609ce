"""Three-valued answers for semidecidable questions."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Optional

DEFAULT_MAX_ORDER = 12


class Outcome(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"
    IN_A = "in_a"
    IN_B = "in_b"


@dataclass(frozen=True)
class Budget:
    """Caps for a search: ``steps`` node expansions, groups of order <= ``max_order``."""

    steps: int = 10_000
    max_order: Optional[int] = None

    def __post_init__(self):
        if self.steps < 0:
            raise ValueError("Budget.steps must be >= 0")
        if self.max_order is not None and self.max_order < 1:
            raise ValueError("Budget.max_order must be >= 1")

    @property
    def order_cap(self) -> int:
        return DEFAULT_MAX_ORDER if self.max_order is None else self.max_order


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    certificate: Any = None
    steps_used: int = 0
    note: str = field(default="", compare=False)

    @property
    def decided(self) -> bool:
        return self.outcome is not Outcome.UNKNOWN

    @classmethod
    def unknown(cls, budget: Budget, steps_used: int, note: str = "") -> "Verdict":
        report = {"kind": "budget", "steps": budget.steps, "max_order": budget.order_cap}
        return cls(Outcome.UNKNOWN, report, steps_used, note)

    def __bool__(self) -> bool:
        raise TypeError("Verdict has three values; compare .outcome instead")
