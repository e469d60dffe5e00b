"""Finitely presented sequences and their ideal convergence.

A sequence is indexed by a set M ⊆ ℕ and given either by a closed form in
n, by a finite list of (value, fiber) pairs, or by a formula on the dyadic
blocks n = 2^k + r. Index sets such as {n : d(x_n, ξ) ≥ ε} are produced as
set expressions and handed to the ideal catalog.
"""
import bisect
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union as TypingUnion

import sympy
from sympy import S

from .errors import (ArgumentError, ConsistencyError, PreconditionError, PresentationError,
                     UnsupportedPresentationError, WitnessError)
from .ideals import Ideal, MembershipVerdict, Verdict, restrict
from .report import Record
from .setexpr import (NAT, Arith, Counted, CountedTraits, SetExpr, Tail, finite, inter, members,
                      provably_subset, union, union_all)
from .shrink import CWitness

logger = logging.getLogger(__name__)

N_SYM = sympy.Symbol("n", integer=True, positive=True)
K_SYM = sympy.Symbol("k", integer=True, nonnegative=True)
R_SYM = sympy.Symbol("r", integer=True, positive=True)
_J = sympy.Symbol("j", integer=True, nonnegative=True)

RESIDUE_MODULI = (1, 2, 3, 4, 6)
VERIFY_WINDOW = 256
MAX_SOLVED_INDEX = 1 << 16
PLANE_TOLERANCE = 1e-9

Point = Any


class Codomain(str, Enum):
    REAL = "real"
    PLANE = "plane"
    FINITE_POINTS = "finite-points"


class Outcome(str, Enum):
    CONVERGES = "converges"
    DIVERGES = "diverges"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ClosedForm:
    expr: sympy.Expr

    def __str__(self):
        return f"closed({sympy.sstr(self.expr)})"


@dataclass(frozen=True)
class FiberMap:
    fibers: Tuple[Tuple[Point, SetExpr], ...]

    def __post_init__(self):
        points = [p for p, _ in self.fibers]
        if len(set(points)) != len(points):
            raise PresentationError("fiber map lists the same value twice")

    def __str__(self):
        body = ";".join(f"{_point_text(p)}:{fiber}" for p, fiber in self.fibers)
        return "fibers{" + body + "}"


@dataclass(frozen=True)
class BlockFormula:
    """x_n = expr(k, r) for n = 2^k + r with 1 <= r <= 2^k; x_1, x_2, ... from init."""
    expr: sympy.Expr
    init: Tuple[int, ...] = ()

    def __str__(self):
        init = ",".join(str(v) for v in self.init)
        return f"blockform({sympy.sstr(self.expr)}; init {init})"


Body = TypingUnion[ClosedForm, FiberMap, BlockFormula]


def block_coordinates(n: int) -> Tuple[int, int]:
    """(k, r) with n = 2^k + r and 1 <= r <= 2^k; defined for n >= 2."""
    k = (n - 1).bit_length() - 1
    return k, n - (1 << k)


def _point_text(p: Point) -> str:
    if isinstance(p, tuple):
        return "(" + ",".join(str(c) for c in p) + ")"
    return str(p)


@dataclass(frozen=True)
class SeqPresentation:
    domain: SetExpr
    body: Body
    codomain: Codomain = Codomain.REAL

    def value(self, n: int) -> Point:
        body = self.body
        if isinstance(body, ClosedForm):
            v = body.expr.xreplace({N_SYM: sympy.Integer(n)})
            if not v.is_number or v.has(S.ComplexInfinity, S.NaN, S.Infinity, S.NegativeInfinity):
                raise PresentationError(f"{body} is not defined at n = {n}")
            return v
        if isinstance(body, FiberMap):
            for p, fiber in body.fibers:
                if n in _member_set(fiber, n):
                    return p
            raise PresentationError(f"index {n} lies in no fiber of {body}")
        if n <= len(body.init):
            return sympy.Integer(body.init[n - 1])
        if n < 2:
            raise PresentationError(f"{body} has no value at n = {n}")
        k, r = block_coordinates(n)
        return body.expr.xreplace({K_SYM: sympy.Integer(k), R_SYM: sympy.Integer(r)})

    def values(self, N: int) -> List[Tuple[int, Point]]:
        if isinstance(self.body, FiberMap):
            table = {n: p for p, fiber in self.body.fibers for n in members(fiber, N)}
            missing = [n for n in members(self.domain, N) if n not in table]
            if missing:
                raise PresentationError(f"index {missing[0]} lies in no fiber of {self.body}")
            return [(n, table[n]) for n in members(self.domain, N)]
        return [(n, self.value(n)) for n in members(self.domain, N)]

    def check_fibers(self, window: int) -> None:
        """Fibers must be pairwise disjoint and cover the domain on the window."""
        if not isinstance(self.body, FiberMap):
            return
        seen: Dict[int, Point] = {}
        for p, fiber in self.body.fibers:
            for n in members(fiber, window):
                if n in seen:
                    raise PresentationError(f"index {n} lies in the fibers of {seen[n]} and {p}")
                seen[n] = p
        if sorted(seen) != members(self.domain, window):
            raise PresentationError(f"fibers do not cover {self.domain} up to {window}")

    def __str__(self):
        if self.domain == NAT:
            return str(self.body)
        return f"{self.body} on {self.domain}"


def _member_set(e: SetExpr, n: int) -> List[int]:
    ms = members(e, n)
    i = bisect.bisect_left(ms, n)
    return ms[i:i + 1]


def closed_form(expr, domain: SetExpr = NAT) -> SeqPresentation:
    """Closed form in n; a plain symbol n is replaced by the positive integer one."""
    expr = sympy.sympify(expr, locals={"n": N_SYM}).xreplace({sympy.Symbol("n"): N_SYM})
    extra = expr.free_symbols - {N_SYM}
    if extra:
        raise PresentationError(f"closed form mentions symbols other than n: {sorted(map(str, extra))}")
    return SeqPresentation(domain, ClosedForm(expr), Codomain.REAL)


def fiber_map(pairs: Sequence[Tuple[Point, SetExpr]], domain: Optional[SetExpr] = None) -> SeqPresentation:
    pairs = tuple((_as_point(p), fiber) for p, fiber in pairs)
    points = [p for p, _ in pairs]
    if points and all(isinstance(p, tuple) for p in points):
        codomain = Codomain.PLANE
    elif all(isinstance(p, sympy.Basic) and p.is_number for p in points):
        codomain = Codomain.REAL
    else:
        codomain = Codomain.FINITE_POINTS
    if domain is None:
        domain = union_all(fiber for _, fiber in pairs)
    return SeqPresentation(domain, FiberMap(pairs), codomain)


def _as_point(p: Point) -> Point:
    if isinstance(p, tuple):
        return tuple(float(c) for c in p)
    if isinstance(p, (int, Fraction)) and not isinstance(p, bool):
        return sympy.Rational(p.numerator, p.denominator) if isinstance(p, Fraction) else sympy.Integer(p)
    if isinstance(p, sympy.Basic):
        return p
    return str(p)


def distance(codomain: Codomain, a: Point, b: Point):
    """Absolute value on ℝ, Euclidean on the plane, discrete on labels."""
    if codomain is Codomain.PLANE:
        return math.dist(a, b)
    if isinstance(a, sympy.Basic) and isinstance(b, sympy.Basic):
        return sympy.Abs(a - b)
    return 0 if a == b else 1


def _negate(condition):
    if isinstance(condition, bool):
        return not condition
    return sympy.Not(condition)


def _truth(value) -> bool:
    if isinstance(value, bool):
        return value
    if value is S.true:
        return True
    if value is S.false:
        return False
    raise PresentationError(f"cannot decide the condition {value}")


# Index sets

def _solve(condition, domain):
    if condition is S.true:
        return domain
    if condition is S.false:
        return S.EmptySet
    if isinstance(condition, sympy.And):
        return sympy.Intersection(*(_solve(c, domain) for c in condition.args))
    if isinstance(condition, sympy.Or):
        return sympy.Union(*(_solve(c, domain) for c in condition.args))
    if isinstance(condition, sympy.Not):
        return sympy.Complement(domain, _solve(condition.args[0], domain))
    if isinstance(condition, sympy.core.relational.Relational):
        return sympy.solveset(condition, _J, domain)
    raise ValueError(f"unsupported condition {condition}")


def _holds_at(solution, k: int) -> bool:
    verdict = solution.contains(sympy.Integer(k))
    if verdict is S.true:
        return True
    if verdict is S.false:
        return False
    raise ValueError(f"undecided membership of {k}")


def _integer_points(solution) -> Tuple[List[int], Optional[int]]:
    """Nonnegative integers of a real solution set as (finite head, tail start)."""
    if solution is S.EmptySet:
        return [], None
    if solution.sup is S.Infinity:
        pieces = solution.args if isinstance(solution, sympy.Union) else (solution,)
        tails = [p for p in pieces if isinstance(p, sympy.Interval) and p.sup is S.Infinity]
        if len(tails) != 1:
            raise ValueError(f"cannot read a tail from {solution}")
        start = sympy.ceiling(tails[0].inf)
        if tails[0].left_open and start == tails[0].inf:
            start += 1
        start = max(int(start), 0)
        if start > MAX_SOLVED_INDEX:
            raise ValueError("tail starts beyond the solved range")
        return [k for k in range(start) if _holds_at(solution, k)], start
    top = int(sympy.floor(solution.sup))
    if top > MAX_SOLVED_INDEX:
        raise ValueError("solution extends beyond the solved range")
    return [k for k in range(0, top + 1) if _holds_at(solution, k)], None


def _residue_decomposition(expr, condition: Callable, m: int) -> SetExpr:
    parts: List[SetExpr] = []
    for b in range(1, m + 1):
        substituted = expr.xreplace({N_SYM: m * _J + b})
        head, start = _integer_points(_solve(condition(substituted), sympy.Interval(0, S.Infinity)))
        parts.append(finite(m * j + b for j in head))
        if start is not None:
            first = m * start + b
            parts.append(Tail(first) if m == 1 else inter(Tail(first), Arith(b % m, m)))
    return union(*parts)


def _agrees(candidate: SetExpr, seq: SeqPresentation, condition: Callable) -> bool:
    expected = [n for n in range(1, VERIFY_WINDOW + 1) if _truth(condition(seq.value(n)))]
    return members(candidate, VERIFY_WINDOW) == expected


def _evaluated(seq: SeqPresentation, condition: Callable, label: str) -> SetExpr:
    def generate(N: int):
        for n in members(seq.domain, N):
            if _truth(condition(seq.value(n))):
                yield n
    return Counted(label, generate, traits=CountedTraits(within=seq.domain))


def index_set(seq: SeqPresentation, condition: Callable, label: str) -> SetExpr:
    """{n ∈ M : condition(x_n)}, solved symbolically for closed forms when possible."""
    if isinstance(seq.body, ClosedForm):
        for m in RESIDUE_MODULI:
            try:
                candidate = _residue_decomposition(seq.body.expr, condition, m)
                if _agrees(candidate, SeqPresentation(NAT, seq.body), condition):
                    return inter(seq.domain, candidate)
            except (ValueError, TypeError, NotImplementedError, AttributeError, PresentationError) as e:
                logger.debug("residue decomposition mod %d failed for %s: %s", m, seq.body, e)
        logger.debug("falling back to an evaluated index set for %s", label)
    return _evaluated(seq, condition, label)


def _check_epsilon(eps) -> None:
    if eps <= 0:
        raise ArgumentError(f"epsilon {eps} must be positive")


def _far(seq: SeqPresentation, xi: Point, eps):
    if seq.codomain is Codomain.PLANE:
        return lambda v: distance(seq.codomain, v, xi) >= float(eps) - PLANE_TOLERANCE
    eps = sympy.Rational(eps.numerator, eps.denominator) if isinstance(eps, Fraction) else sympy.sympify(eps)
    return lambda v: distance(seq.codomain, v, xi) >= eps


def a_eps(seq: SeqPresentation, xi: Point, eps) -> SetExpr:
    """A(ε) = {n ∈ M : d(x_n, ξ) ≥ ε}"""
    _check_epsilon(eps)
    xi = _as_point(xi)
    far = _far(seq, xi, eps)
    if isinstance(seq.body, FiberMap):
        return union_all(fiber for p, fiber in seq.body.fibers if _truth(far(p)))
    return index_set(seq, far, f"{{n : d(x_n,{_point_text(xi)}) >= {eps}}}")


def near_set(seq: SeqPresentation, xi: Point, eps) -> SetExpr:
    """{n ∈ M : d(x_n, ξ) < ε}"""
    _check_epsilon(eps)
    xi = _as_point(xi)
    far = _far(seq, xi, eps)
    if isinstance(seq.body, FiberMap):
        return union_all(fiber for p, fiber in seq.body.fibers if not _truth(far(p)))
    return index_set(seq, lambda v: _negate(far(v)), f"{{n : d(x_n,{_point_text(xi)}) < {eps}}}")


# Verdicts

class EpsilonCheck(Record):
    epsilon: Fraction
    index_set: str
    membership: MembershipVerdict


class ConvergenceVerdict(Record):
    verdict: Outcome
    point: str
    ideal: str
    per_epsilon: List[EpsilonCheck]


class TruthVerdict(Record):
    value: Optional[bool]
    certificate: str
    index_set: Optional[str] = None


def _check_grid(grid: Sequence[Fraction]) -> None:
    if not grid:
        raise ArgumentError("epsilon grid is empty")
    for eps in grid:
        _check_epsilon(eps)
    if any(b >= a for a, b in zip(grid, grid[1:])):
        raise ArgumentError("epsilon grid must be strictly decreasing")


def i_converges(seq: SeqPresentation, xi: Point, ideal: Ideal, grid: Sequence[Fraction]) -> ConvergenceVerdict:
    _check_grid(grid)
    checks = []
    for eps in grid:
        a = a_eps(seq, xi, eps)
        checks.append(EpsilonCheck(epsilon=Fraction(eps), index_set=str(a), membership=ideal.contains(a)))
    verdicts = [c.membership.verdict for c in checks]
    if Verdict.OUT in verdicts:
        outcome = Outcome.DIVERGES
    elif all(v is Verdict.IN for v in verdicts):
        outcome = Outcome.CONVERGES
    else:
        outcome = Outcome.UNKNOWN
    return ConvergenceVerdict(verdict=outcome, point=_point_text(_as_point(xi)), ideal=str(ideal),
                              per_epsilon=checks)


def is_nonthin(seq: SeqPresentation, ideal: Ideal) -> Optional[bool]:
    verdict = ideal.contains(seq.domain).verdict
    if verdict is Verdict.UNKNOWN:
        return None
    return verdict is Verdict.OUT


def i_eventually_constant(seq: SeqPresentation, ideal: Ideal) -> Optional[Point]:
    if not isinstance(seq.body, FiberMap):
        raise UnsupportedPresentationError("eventual constancy needs a fiber map")
    trace = restrict(ideal, seq.domain)
    found = []
    for p, _ in seq.body.fibers:
        rest = union_all(fiber for q, fiber in seq.body.fibers if q != p)
        if trace.contains(rest).verdict is Verdict.IN:
            found.append(p)
    if len(found) > 1:
        raise PreconditionError(f"values {found} are all eventual values; the sequence is thin")
    return found[0] if found else None


class Region:
    """A subset of the codomain: a finite point set or a real interval."""

    def __init__(self, points: Optional[Sequence[Point]] = None, interval: Optional[sympy.Interval] = None):
        if (points is None) == (interval is None):
            raise ArgumentError("a region is either a point set or an interval")
        self.points = None if points is None else tuple(_as_point(p) for p in points)
        self.interval = interval

    def contains(self, value):
        if self.interval is not None:
            return self.interval.contains(value)
        return sympy.Or(*(sympy.Eq(value, p) for p in self.points)) \
            if isinstance(value, sympy.Basic) and value.free_symbols else value in self.points

    def __str__(self):
        if self.interval is not None:
            return str(self.interval)
        return "{" + ",".join(_point_text(p) for p in self.points) + "}"


def i_eventually_in(seq: SeqPresentation, region: Region, ideal: Ideal) -> TruthVerdict:
    def outside_region(v):
        return _negate(region.contains(v))

    if isinstance(seq.body, FiberMap):
        out = union_all(fiber for p, fiber in seq.body.fibers if _truth(outside_region(p)))
    else:
        out = index_set(seq, outside_region, f"{{n : x_n not in {region}}}")
    verdict = restrict(ideal, seq.domain).contains(out)
    value = None if verdict.verdict is Verdict.UNKNOWN else verdict.verdict is Verdict.IN
    return TruthVerdict(value=value, certificate=verdict.certificate, index_set=str(out))


def i_cluster_points(seq: SeqPresentation, ideal: Ideal, candidates: Sequence[Point],
                     grid: Sequence[Fraction]) -> List[Point]:
    """Candidates whose every tested near-set is outside the ideal."""
    if not candidates:
        raise ArgumentError("no candidate points")
    _check_grid(grid)
    return [xi for xi in candidates
            if all(ideal.contains(near_set(seq, xi, eps)).verdict is Verdict.OUT for eps in grid)]


def i_limits(seq: SeqPresentation, ideal: Ideal, candidates: Sequence[Point],
             grid: Sequence[Fraction]) -> List[Point]:
    """Candidates the sequence provably converges to; two far-apart limits are a contradiction."""
    limits = [xi for xi in candidates
              if i_converges(seq, xi, ideal, grid).verdict is Outcome.CONVERGES]
    if seq.codomain is not Codomain.FINITE_POINTS and is_nonthin(seq, ideal):
        smallest = min(grid)
        for i, a in enumerate(limits):
            for b in limits[i + 1:]:
                gap = distance(seq.codomain, _as_point(a), _as_point(b))
                if float(gap) > 2 * float(smallest):
                    raise ConsistencyError(f"{a} and {b} are both limits of {seq} under {ideal}")
    return limits


# Increasing extraction

class ExtractionResult(Record):
    indices: List[int]
    values: List[int]
    skipped: List[int]
    range_set: str
    membership: MembershipVerdict
    window: int
    extrapolated: bool = False


class BlockAnalysis(Record):
    k_max: int
    decreasing_blocks: int
    minima_bounded: bool
    holds: bool


def block_decrease_certificate(seq: SeqPresentation, k_max: int) -> BlockAnalysis:
    """Values strictly decrease inside each block 2^k < n <= 2^(k+1) and stay >= 2^k."""
    if not isinstance(seq.body, BlockFormula):
        raise UnsupportedPresentationError("block certificate needs a block formula")
    decreasing, bounded = 0, True
    for k in range(1, k_max + 1):
        block = [int(seq.value(n)) for n in range((1 << k) + 1, (1 << (k + 1)) + 1)]
        if all(b < a for a, b in zip(block, block[1:])):
            decreasing += 1
        bounded = bounded and min(block) >= (1 << k)
    return BlockAnalysis(k_max=k_max, decreasing_blocks=decreasing, minima_bounded=bounded,
                         holds=decreasing == k_max and bounded)


def increasing_extract(seq: SeqPresentation, ideal: Ideal, witness: CWitness,
                       window: int = 4096) -> ExtractionResult:
    """Greedy strictly increasing subsequence through the witness set.

    Walks the witness B in increasing order and, for each b, takes the first
    index after the previous pick where the sequence equals b; values with
    no such index inside the window are skipped. Every element of B up to
    the window must be a value of the sequence on the first `window` indices.
    A fiber map has a finite range, which must not belong to the ideal.
    """
    if not provably_subset(witness.b, witness.a) and \
            not set(members(witness.b, window)) <= set(members(witness.a, window)):
        raise WitnessError(f"{witness.b} is not contained in {witness.a}")
    if ideal.contains(witness.b).verdict is Verdict.IN:
        raise WitnessError(f"{witness.b} belongs to {ideal}")

    positions: Dict[int, List[int]] = {}
    for n, v in seq.values(window):
        if not (isinstance(v, sympy.Basic) and v.is_Integer and v >= 1):
            raise PresentationError(f"x_{n} = {v} is not a natural number")
        positions.setdefault(int(v), []).append(n)

    if isinstance(seq.body, FiberMap) and \
            all(isinstance(p, sympy.Basic) and p.is_Integer and p >= 1 for p, _ in seq.body.fibers):
        range_expr = finite(int(p) for p, _ in seq.body.fibers)
        if ideal.contains(range_expr).verdict is Verdict.IN:
            raise PreconditionError(f"the range {range_expr} of {seq} belongs to {ideal}")
    missing = [b for b in members(witness.b, window) if b not in positions]
    if missing:
        raise WitnessError(f"{missing[0]} ∈ {witness.b} is not a value of {seq} up to index {window}")

    indices, values, skipped = [], [], []
    last = 0
    for b in members(witness.b, window):
        slots = positions[b]
        i = bisect.bisect_right(slots, last)
        if i == len(slots):
            skipped.append(b)
            continue
        last = slots[i]
        indices.append(last)
        values.append(b)

    if not skipped:
        # every element of B up to the window was picked; B stands in for the range
        range_set = witness.b
        membership = ideal.contains(range_set)
    else:
        picked = tuple(values)
        density = None
        if isinstance(seq.body, BlockFormula):
            k_max = max(1, window.bit_length() - 2)
            if block_decrease_certificate(seq, k_max).holds:
                density = Fraction(0)
        range_set = Counted(
            f"greedy_range({seq})",
            lambda N: (v for v in picked if v <= N),
            traits=CountedTraits(density=density, within=witness.b),
        )
        membership = ideal.contains(range_set)
    return ExtractionResult(indices=indices, values=values, skipped=skipped[:32],
                            range_set=str(range_set), membership=membership, window=window,
                            extrapolated=not skipped)


class DyadicAnalysis(Record):
    k_max: int
    n_max: int
    block_2_values: List[int]
    per_block_decreasing: bool
    longest_increasing: int
    length_bound: int
    max_range_count: int
    density_bound: Fraction
    holds: bool


def dyadic_counterexample() -> SeqPresentation:
    """x_1 = 2, x_2 = 1, x_n = 2^(k+1) - (r - 1) for n = 2^k + r."""
    expr = 2 ** (K_SYM + 1) - (R_SYM - 1)
    return SeqPresentation(NAT, BlockFormula(expr, (2, 1)), Codomain.REAL)


def longest_increasing_length(values: Sequence[int]) -> int:
    tails: List[int] = []
    for v in values:
        i = bisect.bisect_left(tails, v)
        if i == len(tails):
            tails.append(v)
        else:
            tails[i] = v
    return len(tails)


def dyadic_analysis(k_max: int) -> Tuple[SeqPresentation, DyadicAnalysis]:
    if k_max < 3:
        raise ArgumentError(f"k_max {k_max} must be at least 3")
    seq = dyadic_counterexample()
    n_max = 1 << (k_max + 1)
    values = [int(v) for _, v in seq.values(n_max)]
    certificate = block_decrease_certificate(seq, k_max)
    longest = longest_increasing_length(values)
    # every value is at most n_max, so the whole prefix bounds the range count at n_max
    count = longest
    density_bound = Fraction(count, n_max)
    bound = k_max + 2
    analysis = DyadicAnalysis(
        k_max=k_max,
        n_max=n_max,
        block_2_values=values[4:8],
        per_block_decreasing=certificate.holds,
        longest_increasing=longest,
        length_bound=bound,
        max_range_count=count,
        density_bound=density_bound,
        holds=certificate.holds and longest <= bound and density_bound <= Fraction(bound, n_max),
    )
    return seq, analysis
