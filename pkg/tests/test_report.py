"""Tests for canonical JSON rendering."""
from fractions import Fraction

import pytest
import sympy
from pydantic import ValidationError

from src.ideals import MembershipVerdict, Verdict
from src.report import format_fraction, render, to_jsonable


def test_format_fraction():
    """Integers drop the denominator."""
    assert format_fraction(Fraction(3, 1)) == "3"
    assert format_fraction(Fraction(-1, 2)) == "-1/2"


def test_to_jsonable_values():
    """Fractions, enums, sympy numbers and sets become plain JSON values."""
    assert to_jsonable(Verdict.IN) == "in"
    assert to_jsonable(Fraction(2, 4)) == "1/2"
    assert to_jsonable(1 / 3) == 0.333333333333
    assert to_jsonable(2 / 3, digits=3) == 0.667
    assert to_jsonable(sympy.Rational(3, 6)) == "1/2"
    assert to_jsonable(sympy.Integer(4)) == 4
    assert to_jsonable(frozenset({"b", "a"})) == ["a", "b"]
    assert to_jsonable((1, (2, 3))) == [1, [2, 3]]
    assert to_jsonable({1: True, "x": None}) == {"1": True, "x": None}


def test_records_render():
    """Records render through their fields."""
    verdict = MembershipVerdict(verdict=Verdict.OUT, certificate="nat is infinite")
    assert to_jsonable(verdict) == {"verdict": "out", "certificate": "nat is infinite"}
    with pytest.raises(ValidationError):
        verdict.certificate = "changed"


def test_render_is_canonical():
    """Sorted keys and two-space indentation."""
    assert render({"b": 1, "a": Fraction(1, 2)}) == '{\n  "a": "1/2",\n  "b": 1\n}'
    assert render({"x": "α"}) == '{\n  "x": "α"\n}'
