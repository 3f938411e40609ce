"""Plain-JSON renderings of verdicts and certificates, and the way back."""
from __future__ import annotations

import enum
from typing import Any, Sequence

from .core.derivation import Factor
from .core.presentation import Presentation, parse_presentation
from .core.words import Word
from .dyson import DysonNormalForm, Lamp
from .finite.cayley import MarkedGroup
from .finite.marked import from_cayley_dict, to_cayley_dict


def to_jsonable(obj: Any) -> Any:
    """Recursively convert library objects; output contains no floats."""
    if isinstance(obj, MarkedGroup):
        return to_cayley_dict(obj)
    if isinstance(obj, Presentation):
        return obj.format()
    if isinstance(obj, Factor):
        return {"conjugator": list(obj.conjugator), "relator": obj.relator, "sign": obj.sign}
    if isinstance(obj, Lamp):
        return obj.to_dict()
    if isinstance(obj, DysonNormalForm):
        return obj.to_json()
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted(to_jsonable(v) for v in obj)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def factors_from_json(data: Sequence[dict]) -> list[Factor]:
    return [Factor(Word(d["conjugator"]), int(d["relator"]), int(d["sign"])) for d in data]


def group_from_json(data: dict) -> MarkedGroup:
    return from_cayley_dict(data)


def presentation_from_json(text: str) -> Presentation:
    return parse_presentation(text)
