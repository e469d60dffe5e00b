"""Canonical JSON rendering for verdicts and reports."""
import json
from enum import Enum
from fractions import Fraction
from typing import Any

import sympy
from pydantic import BaseModel, ConfigDict


class Record(BaseModel):
    """Base for every result record; immutable and JSON renderable."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


def format_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def to_jsonable(obj: Any, digits: int = 12) -> Any:
    """Convert records, fractions, sympy numbers and sets into plain JSON values."""
    if isinstance(obj, BaseModel):
        return to_jsonable(obj.model_dump(), digits)
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return format_fraction(obj)
    if isinstance(obj, float):
        return float(f"{obj:.{digits}g}")
    if isinstance(obj, sympy.Basic):
        if obj.is_Integer:
            return int(obj)
        if obj.is_Rational:
            return format_fraction(Fraction(int(obj.p), int(obj.q)))
        if obj.is_Float:
            return float(f"{float(obj):.{digits}g}")
        return str(obj)
    if isinstance(obj, dict):
        return {str(to_jsonable(k, digits)): to_jsonable(v, digits) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        items = [to_jsonable(item, digits) for item in obj]
        return sorted(items, key=lambda item: json.dumps(item, sort_keys=True))
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(item, digits) for item in obj]
    return str(obj)


def render(obj: Any, digits: int = 12) -> str:
    """Render deterministically: sorted keys, fixed float precision."""
    return json.dumps(to_jsonable(obj, digits), sort_keys=True, indent=2, ensure_ascii=False)
