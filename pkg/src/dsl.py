"""Parsers for the command-line notation of sets, ideals, sequences and spaces.

    set       finite{1,2,3} | arith(b,m) | block(i) | tail(n) | nat | evens | odds
              | squares | powers2 | union(s,s,...) | inter(s,s) | diff(s,s) | compl(s)
    ideal     fin | i1 | i2 | i3 | id | local-blocks | restrict(ideal, set)
    sequence  closed(<expr in n>) [on set]
              | fibers{point: set; point: set ...} [on set]
              | blockform(<expr in k, r>; init v1,v2,...)
    space     space{points: a,b; opens: {}, {a}, {a,b}}
"""
import re
from tokenize import TokenError
from fractions import Fraction
from functools import reduce
from typing import Callable, List, Optional, Tuple

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from .errors import IdealConvError, ParseError
from .ideals import Ideal, get_ideal_class, restrict
from .seq import K_SYM, N_SYM, R_SYM, BlockFormula, Codomain, SeqPresentation, closed_form, fiber_map
from .setexpr import (EVENS, NAT, ODDS, POWERS_OF_TWO, SQUARES, Arith, Block, SetExpr, Tail, compl, diff,
                      finite, inter, union)
from .topolab import FinSpace

TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+(?:/\d+)?(?:\.\d+)?)|(?P<name>[^\W\d][\w\-']*)|(?P<sym>.))")
TRANSFORMATIONS = standard_transformations + (convert_xor,)

NAMED_SETS = {"nat": NAT, "evens": EVENS, "odds": ODDS, "squares": SQUARES, "powers2": POWERS_OF_TWO}


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: Optional[int] = None) -> ParseError:
        return ParseError(message, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self) -> bool:
        return self.peek() == ""

    def expect(self, literal: str):
        self.skip()
        if not self.text.startswith(literal, self.pos):
            raise self.error(f"expected {literal!r}")
        self.pos += len(literal)

    def accept(self, literal: str) -> bool:
        self.skip()
        if self.text.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        return False

    def name(self) -> str:
        self.skip()
        m = TOKEN.match(self.text, self.pos)
        if not m or not m.group("name"):
            raise self.error("expected a name")
        self.pos = m.end()
        return m.group("name")

    def number(self) -> Fraction:
        self.skip()
        m = TOKEN.match(self.text, self.pos)
        if not m or not m.group("int"):
            raise self.error("expected a number")
        try:
            value = Fraction(m.group("int"))
        except (ValueError, ZeroDivisionError):
            raise self.error("expected a number") from None
        self.pos = m.end()
        return value

    def integer(self) -> int:
        start = self.pos
        value = self.number()
        if value.denominator != 1:
            raise self.error("expected an integer", start)
        return int(value)

    def balanced(self, stop: str) -> Tuple[str, int]:
        """Raw text up to `stop` at bracket depth zero."""
        self.skip()
        start, depth = self.pos, 0
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if depth == 0 and ch in stop:
                return self.text[start:self.pos], start
            if ch in "([{":
                depth += 1
            elif ch in ")]}":
                depth -= 1
                if depth < 0:
                    break
            self.pos += 1
        raise self.error(f"expected {' or '.join(repr(c) for c in stop)}", start)

    def finish(self):
        if not self.at_end():
            raise self.error(f"unexpected {self.peek()!r}")


def _list(cursor: _Cursor, item: Callable, close: str) -> list:
    items = []
    if cursor.accept(close):
        return items
    while True:
        items.append(item())
        if cursor.accept(close):
            return items
        cursor.expect(",")


def _set(cursor: _Cursor) -> SetExpr:
    cursor.skip()
    start = cursor.pos
    name = cursor.name().lower()
    try:
        if name in NAMED_SETS:
            return NAMED_SETS[name]
        if name == "finite":
            cursor.expect("{")
            return finite(_list(cursor, cursor.integer, "}"))
        cursor.expect("(")
        if name in ("arith", "block", "tail"):
            args = _list(cursor, cursor.integer, ")")
            arity = 2 if name == "arith" else 1
            if len(args) != arity:
                raise cursor.error(f"{name} takes {arity} argument(s)", start)
            return {"arith": Arith, "block": Block, "tail": Tail}[name](*args)
        args = _list(cursor, lambda: _set(cursor), ")")
        if name == "union" and len(args) >= 2:
            return union(*args)
        if name in ("inter", "diff") and len(args) == 2:
            return (inter if name == "inter" else diff)(*args)
        if name == "inter" and len(args) > 2:
            return reduce(inter, args)
        if name == "compl" and len(args) == 1:
            return compl(args[0])
    except ParseError:
        raise
    except IdealConvError as e:
        raise ParseError(str(e), start) from e
    raise ParseError(f"unknown set constructor {name!r} or wrong number of arguments", start)


def parse_setexpr(text: str) -> SetExpr:
    cursor = _Cursor(text)
    result = _set(cursor)
    cursor.finish()
    return result


def _ideal(cursor: _Cursor) -> Ideal:
    cursor.skip()
    start = cursor.pos
    name = cursor.name().lower()
    if name == "restrict":
        cursor.expect("(")
        base = _ideal(cursor)
        cursor.expect(",")
        domain = _set(cursor)
        cursor.expect(")")
        return restrict(base, domain)
    cls = get_ideal_class(name)
    if cls is None:
        raise ParseError(f"unknown ideal {name!r}", start)
    return cls()


def parse_ideal(text: str) -> Ideal:
    cursor = _Cursor(text)
    result = _ideal(cursor)
    cursor.finish()
    return result


def _sympy(body: str, position: int, symbols: dict) -> sympy.Expr:
    try:
        expr = parse_expr(body, local_dict=dict(symbols), transformations=TRANSFORMATIONS)
    except (SyntaxError, TypeError, ValueError, sympy.SympifyError, TokenError) as e:
        raise ParseError(f"cannot read expression {body!r}", position) from e
    extra = expr.free_symbols - set(symbols.values())
    if extra:
        raise ParseError(f"unknown symbols {sorted(map(str, extra))} in {body!r}", position)
    return expr


def _point(cursor: _Cursor):
    cursor.skip()
    if cursor.accept("("):
        coords = _list(cursor, cursor.number, ")")
        return tuple(float(c) for c in coords)
    m = TOKEN.match(cursor.text, cursor.pos)
    if m and m.group("int"):
        value = cursor.number()
        return int(value) if value.denominator == 1 else value
    return cursor.name()


def _domain(cursor: _Cursor) -> Optional[SetExpr]:
    if cursor.accept("on"):
        return _set(cursor)
    return None


def parse_sequence(text: str) -> SeqPresentation:
    cursor = _Cursor(text)
    cursor.skip()
    start = cursor.pos
    kind = cursor.name().lower()
    if kind == "closed":
        cursor.expect("(")
        body, at = cursor.balanced(")")
        cursor.expect(")")
        expr = _sympy(body, at, {"n": N_SYM})
        domain = _domain(cursor) or NAT
        cursor.finish()
        return closed_form(expr, domain)
    if kind == "fibers":
        cursor.expect("{")
        pairs = []
        while True:
            p = _point(cursor)
            cursor.expect(":")
            pairs.append((p, _set(cursor)))
            if cursor.accept("}"):
                break
            cursor.expect(";")
        domain = _domain(cursor)
        cursor.finish()
        try:
            return fiber_map(pairs, domain)
        except IdealConvError as e:
            raise ParseError(str(e), start) from e
    if kind == "blockform":
        cursor.expect("(")
        body, at = cursor.balanced(";")
        cursor.expect(";")
        if cursor.name().lower() != "init":
            raise cursor.error("expected 'init'")
        init = _list(cursor, cursor.integer, ")")
        cursor.finish()
        expr = _sympy(body, at, {"k": K_SYM, "r": R_SYM})
        return SeqPresentation(NAT, BlockFormula(expr, tuple(init)), Codomain.REAL)
    raise ParseError(f"unknown sequence form {kind!r}", start)


def parse_space(text: str) -> FinSpace:
    cursor = _Cursor(text)
    cursor.skip()
    start = cursor.pos
    if cursor.name().lower() != "space":
        raise ParseError("expected 'space{'", start)
    cursor.expect("{")
    cursor.expect("points")
    cursor.expect(":")
    points = [cursor.name()]
    while cursor.accept(","):
        points.append(cursor.name())
    cursor.expect(";")
    cursor.expect("opens")
    cursor.expect(":")
    opens = []
    while True:
        cursor.expect("{")
        opens.append(_list(cursor, cursor.name, "}"))
        if not cursor.accept(","):
            break
    cursor.expect("}")
    cursor.finish()
    try:
        return FinSpace.from_opens(points, opens)
    except IdealConvError as e:
        raise ParseError(str(e), start) from e


def parse_grid(text: str) -> List[Fraction]:
    """Comma separated positive rationals, e.g. 1/2,1/4."""
    cursor = _Cursor(text)
    grid = [cursor.number()]
    while cursor.accept(","):
        grid.append(cursor.number())
    cursor.finish()
    return grid


def parse_points(text: str) -> list:
    cursor = _Cursor(text)
    points = [_point(cursor)]
    while cursor.accept(","):
        points.append(_point(cursor))
    cursor.finish()
    return points
