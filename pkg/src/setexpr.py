"""Symbolic subsets of the natural numbers 1, 2, 3, ...

Expressions are immutable and hashable. Whenever an expression avoids
`Counted` leaves it has an eventually periodic normal form, and finiteness,
inclusion, density and the per-block traces are decided exactly from it.
Counted leaves contribute only what their declared traits certify.

Block i is the set of n whose 2-adic valuation is i - 1, that is the
residue class 2^(i-1) modulo 2^i.
"""
import bisect
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import count
from typing import Callable, FrozenSet, Iterable, List, Literal, Optional, Tuple

from .errors import ArgumentError, MalformedExpressionError
from .report import Record

logger = logging.getLogger(__name__)

MAX_PERIOD = 1 << 16
MAX_START = 1 << 16


class SetExpr:
    """Base class of the expression tree."""
    __slots__ = ()

    def __or__(self, other: "SetExpr") -> "SetExpr":
        return union(self, other)

    def __and__(self, other: "SetExpr") -> "SetExpr":
        return inter(self, other)

    def __sub__(self, other: "SetExpr") -> "SetExpr":
        return diff(self, other)

    def __invert__(self) -> "SetExpr":
        return compl(self)


@dataclass(frozen=True)
class Finite(SetExpr):
    elements: Tuple[int, ...] = ()

    def __post_init__(self):
        elements = tuple(self.elements)
        for x in elements:
            if isinstance(x, bool) or not isinstance(x, int) or x < 1:
                raise MalformedExpressionError(f"finite set element {x!r} is not a natural number")
        if any(b <= a for a, b in zip(elements, elements[1:])):
            raise MalformedExpressionError("finite set elements must be strictly increasing")
        object.__setattr__(self, "elements", elements)

    def __str__(self):
        return "finite{" + ",".join(str(x) for x in self.elements) + "}"


@dataclass(frozen=True)
class Arith(SetExpr):
    """{n >= 1 : n = b (mod m)}"""
    b: int
    m: int

    def __post_init__(self):
        if self.m < 1 or self.b < 0:
            raise MalformedExpressionError(f"arith({self.b},{self.m}) needs m >= 1 and b >= 0")

    def __str__(self):
        return f"arith({self.b},{self.m})"


@dataclass(frozen=True)
class Block(SetExpr):
    i: int

    def __post_init__(self):
        if self.i < 1:
            raise MalformedExpressionError(f"block index {self.i} must be >= 1")

    def __str__(self):
        return f"block({self.i})"


@dataclass(frozen=True)
class Tail(SetExpr):
    """{n : n >= n0}"""
    n0: int

    def __post_init__(self):
        if self.n0 < 1:
            raise MalformedExpressionError(f"tail start {self.n0} must be >= 1")

    def __str__(self):
        return f"tail({self.n0})"


@dataclass(frozen=True)
class CountedTraits:
    """Facts a Counted set certifies about itself.

    unbounded      the set is infinite
    density        its asymptotic density, when known
    finite_traces  every block meets it in a finite set
    many_blocks    it meets infinitely many blocks
    within         a set expression known to contain it
    """
    unbounded: bool = False
    density: Optional[Fraction] = None
    finite_traces: bool = False
    many_blocks: bool = False
    within: Optional[SetExpr] = None


@dataclass(frozen=True, eq=False)
class Counted(SetExpr):
    """A set given by an increasing generator.

    `generator(N)` yields the elements in increasing order and may run past
    N; enumeration stops at the first element above N. `count(N)`, when
    given, must agree with the number of elements up to N.
    """
    name: str
    generator: Callable[[int], Iterable[int]]
    count: Optional[Callable[[int], int]] = None
    traits: CountedTraits = field(default_factory=CountedTraits)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Union(SetExpr):
    left: SetExpr
    right: SetExpr

    def __str__(self):
        return f"union({self.left},{self.right})"


@dataclass(frozen=True)
class Inter(SetExpr):
    left: SetExpr
    right: SetExpr

    def __str__(self):
        return f"inter({self.left},{self.right})"


@dataclass(frozen=True)
class Diff(SetExpr):
    left: SetExpr
    right: SetExpr

    def __str__(self):
        return f"diff({self.left},{self.right})"


@dataclass(frozen=True)
class Compl(SetExpr):
    inner: SetExpr

    def __str__(self):
        return f"compl({self.inner})"


NAT = Tail(1)
EMPTY = Finite(())
EVENS = Arith(0, 2)
ODDS = Arith(1, 2)


def finite(elements: Iterable[int]) -> Finite:
    """Finite set from any iterable of naturals."""
    return Finite(tuple(sorted(set(elements))))


SQUARES = Counted(
    "squares",
    lambda N: (k * k for k in count(1)),
    count=math.isqrt,
    traits=CountedTraits(unbounded=True, density=Fraction(0)),
)

POWERS_OF_TWO = Counted(
    "powers2",
    lambda N: (1 << k for k in count(0)),
    count=lambda N: N.bit_length(),
    traits=CountedTraits(unbounded=True, density=Fraction(0), finite_traces=True, many_blocks=True),
)


# Smart constructors. They only apply identities that hold syntactically.

def union(*parts: SetExpr) -> SetExpr:
    parts = [p for p in parts if p != EMPTY]
    if not parts:
        return EMPTY
    if NAT in parts:
        return NAT
    merged: List[SetExpr] = []
    points: set = set()
    for part in parts:
        if isinstance(part, Finite):
            points.update(part.elements)
        elif part not in merged:
            merged.append(part)
    if points:
        merged.insert(0, finite(points))
    return reduce(Union, merged)


def inter(left: SetExpr, right: SetExpr) -> SetExpr:
    if left == NAT:
        return right
    if right == NAT or left == right:
        return left
    if left == EMPTY or right == EMPTY:
        return EMPTY
    for small, other in ((left, right), (right, left)):
        if isinstance(small, Finite) and not _has_counted(other):
            return Finite(tuple(x for x in small.elements if _point_member(other, x)))
    return Inter(left, right)


def diff(left: SetExpr, right: SetExpr) -> SetExpr:
    if right == EMPTY:
        return left
    if left == right or left == EMPTY:
        return EMPTY
    if isinstance(left, Finite) and not _has_counted(right):
        return Finite(tuple(x for x in left.elements if not _point_member(right, x)))
    return Diff(left, right)


def compl(inner: SetExpr) -> SetExpr:
    if isinstance(inner, Compl):
        return inner.inner
    if inner == EMPTY:
        return NAT
    return Compl(inner)


def _has_counted(e: SetExpr) -> bool:
    if isinstance(e, Counted):
        return True
    if isinstance(e, (Union, Inter, Diff)):
        return _has_counted(e.left) or _has_counted(e.right)
    if isinstance(e, Compl):
        return _has_counted(e.inner)
    return False


def _point_member(e: SetExpr, n: int) -> bool:
    """Membership of a single point for Counted-free expressions."""
    if isinstance(e, Finite):
        i = bisect.bisect_left(e.elements, n)
        return i < len(e.elements) and e.elements[i] == n
    if isinstance(e, Arith):
        return n % e.m == e.b % e.m
    if isinstance(e, Block):
        return n % (1 << e.i) == 1 << (e.i - 1)
    if isinstance(e, Tail):
        return n >= e.n0
    if isinstance(e, Union):
        return _point_member(e.left, n) or _point_member(e.right, n)
    if isinstance(e, Inter):
        return _point_member(e.left, n) and _point_member(e.right, n)
    if isinstance(e, Diff):
        return _point_member(e.left, n) and not _point_member(e.right, n)
    if isinstance(e, Compl):
        return not _point_member(e.inner, n)
    raise MalformedExpressionError(f"no point membership for {e}")


# Enumeration

def members(e: SetExpr, N: int) -> List[int]:
    """The elements of e that are at most N, in increasing order."""
    if N < 1:
        raise ArgumentError(f"window {N} must be >= 1")
    return list(_members(e, N))


@lru_cache(maxsize=512)
def _members(e: SetExpr, N: int) -> Tuple[int, ...]:
    if isinstance(e, Finite):
        return e.elements[:bisect.bisect_right(e.elements, N)]
    if isinstance(e, Arith):
        r = e.b % e.m
        return tuple(range(r if r >= 1 else e.m, N + 1, e.m))
    if isinstance(e, Block):
        return tuple(range(1 << (e.i - 1), N + 1, 1 << e.i))
    if isinstance(e, Tail):
        return tuple(range(e.n0, N + 1))
    if isinstance(e, Counted):
        return _generate(e, N)
    if isinstance(e, Union):
        return tuple(sorted(set(_members(e.left, N)) | set(_members(e.right, N))))
    if isinstance(e, Inter):
        right = set(_members(e.right, N))
        return tuple(x for x in _members(e.left, N) if x in right)
    if isinstance(e, Diff):
        right = set(_members(e.right, N))
        return tuple(x for x in _members(e.left, N) if x not in right)
    if isinstance(e, Compl):
        inner = set(_members(e.inner, N))
        return tuple(x for x in range(1, N + 1) if x not in inner)
    raise MalformedExpressionError(f"unknown set expression {e!r}")


def _generate(e: Counted, N: int) -> Tuple[int, ...]:
    out: List[int] = []
    previous = 0
    for x in e.generator(N):
        if not isinstance(x, int) or x <= previous:
            raise MalformedExpressionError(f"{e.name}: generator is not strictly increasing at {x!r}")
        if x > N:
            break
        out.append(x)
        previous = x
    if e.count is not None:
        expected = e.count(N)
        if expected != len(out):
            raise MalformedExpressionError(
                f"{e.name}: count({N}) = {expected} but the generator produced {len(out)} elements")
    return tuple(out)


def count_prefix(e: SetExpr, N: int) -> int:
    """|e ∩ [1, N]|"""
    if N < 1:
        raise ArgumentError(f"window {N} must be >= 1")
    if isinstance(e, Finite):
        return bisect.bisect_right(e.elements, N)
    if isinstance(e, Arith):
        r = e.b % e.m
        if r == 0:
            return N // e.m
        return (N - r) // e.m + 1 if N >= r else 0
    if isinstance(e, Block):
        return N // (1 << (e.i - 1)) - N // (1 << e.i)
    if isinstance(e, Tail):
        return max(0, N - e.n0 + 1)
    return len(_members(e, N))


def upper_half_checkpoints(window: int) -> List[int]:
    """Nine evenly spaced checkpoints over the upper half of the window."""
    half = max(1, -(-window // 2))
    return sorted({half + ((window - half) * j) // 8 for j in range(9)})


# Eventually periodic normal form

@dataclass(frozen=True)
class Periodic:
    """n < start: n in head; n >= start: n mod period in residues."""
    start: int
    period: int
    residues: FrozenSet[int]
    head: FrozenSet[int]

    def contains(self, n: int) -> bool:
        if n < self.start:
            return n in self.head
        return n % self.period in self.residues

    def lift(self, start: int, period: int) -> "Periodic":
        residues = frozenset(r for r in range(period) if r % self.period in self.residues)
        head = frozenset(n for n in range(1, start) if self.contains(n))
        return Periodic(start, period, residues, head)

    @property
    def is_finite(self) -> bool:
        return not self.residues

    @property
    def density(self) -> Fraction:
        return Fraction(len(self.residues), self.period)


def _combine(p: Periodic, q: Periodic, op) -> Optional[Periodic]:
    start = max(p.start, q.start)
    period = math.lcm(p.period, q.period)
    if period > MAX_PERIOD or start > MAX_START:
        return None
    p, q = p.lift(start, period), q.lift(start, period)
    return Periodic(start, period, op(p.residues, q.residues), op(p.head, q.head))


@lru_cache(maxsize=4096)
def periodic_form(e: SetExpr) -> Optional[Periodic]:
    """Exact normal form, or None when e involves Counted sets or is too large."""
    if isinstance(e, Finite):
        if not e.elements:
            return Periodic(1, 1, frozenset(), frozenset())
        if e.elements[-1] >= MAX_START:
            return None
        return Periodic(e.elements[-1] + 1, 1, frozenset(), frozenset(e.elements))
    if isinstance(e, Arith):
        if e.m > MAX_PERIOD:
            return None
        return Periodic(1, e.m, frozenset({e.b % e.m}), frozenset())
    if isinstance(e, Block):
        if (1 << e.i) > MAX_PERIOD:
            return None
        return Periodic(1, 1 << e.i, frozenset({1 << (e.i - 1)}), frozenset())
    if isinstance(e, Tail):
        if e.n0 > MAX_START:
            return None
        return Periodic(e.n0, 1, frozenset({0}), frozenset())
    if isinstance(e, Counted):
        return None
    if isinstance(e, Compl):
        p = periodic_form(e.inner)
        if p is None:
            return None
        return Periodic(p.start, p.period,
                        frozenset(range(p.period)) - p.residues,
                        frozenset(range(1, p.start)) - p.head)
    p, q = periodic_form(e.left), periodic_form(e.right)
    if p is None or q is None:
        return None
    if isinstance(e, Union):
        return _combine(p, q, frozenset.union)
    if isinstance(e, Inter):
        return _combine(p, q, frozenset.intersection)
    return _combine(p, q, frozenset.difference)


def from_periodic(p: Periodic) -> SetExpr:
    """Rebuild a readable expression from a normal form."""
    parts: List[SetExpr] = []
    if p.head:
        parts.append(finite(p.head))
    if p.residues:
        if p.period == 1:
            parts.append(Tail(p.start))
        else:
            classes = union(*(Arith(r, p.period) for r in sorted(p.residues)))
            parts.append(inter(Tail(p.start), classes) if p.start > 1 else classes)
    return union(*parts)


# Finiteness

class Finiteness(str, Enum):
    FINITE = "finite"
    INFINITE = "infinite"
    UNKNOWN = "unknown"


@lru_cache(maxsize=4096)
def classify_finiteness(e: SetExpr) -> Finiteness:
    """Sound classification; UNKNOWN whenever no rule certifies an answer."""
    p = periodic_form(e)
    if p is not None:
        return Finiteness.FINITE if p.is_finite else Finiteness.INFINITE
    verdict = _structural_finiteness(e)
    if verdict is Finiteness.UNKNOWN:
        d = exact_density(e)
        if d is not None and d > 0:
            return Finiteness.INFINITE
    return verdict


def _structural_finiteness(e: SetExpr) -> Finiteness:
    FIN, INF, UNK = Finiteness.FINITE, Finiteness.INFINITE, Finiteness.UNKNOWN
    if isinstance(e, Finite):
        return FIN
    if isinstance(e, (Arith, Block, Tail)):
        return INF
    if isinstance(e, Counted):
        return INF if e.traits.unbounded else UNK
    if isinstance(e, Compl):
        return INF if classify_finiteness(e.inner) is FIN else UNK
    left, right = classify_finiteness(e.left), classify_finiteness(e.right)
    if isinstance(e, Union):
        if INF in (left, right):
            return INF
        return FIN if left is FIN and right is FIN else UNK
    if isinstance(e, Inter):
        if FIN in (left, right):
            return FIN
        if provably_subset(e.left, e.right):
            return left
        if provably_subset(e.right, e.left):
            return right
        # finite traces against finitely many blocks
        for a, b in ((e.left, e.right), (e.right, e.left)):
            if block_profile(a).traces[1] == 0 and block_profile(b).blocks[1] <= 1:
                return FIN
        return UNK
    if left is FIN:
        return FIN
    if left is INF and right is FIN:
        return INF
    return UNK


# Inclusion

@lru_cache(maxsize=4096)
def provably_subset(a: SetExpr, b: SetExpr) -> bool:
    """True only when a ⊆ b is certain."""
    if a == b or b == NAT or a == EMPTY:
        return True
    pa, pb = periodic_form(a), periodic_form(b)
    if pa is not None and pb is not None:
        d = _combine(pa, pb, frozenset.difference)
        if d is not None:
            return not d.residues and not d.head
    if isinstance(a, Finite):
        return set(a.elements) <= set(_members(b, a.elements[-1]))
    if isinstance(a, Union):
        return provably_subset(a.left, b) and provably_subset(a.right, b)
    if isinstance(a, Inter) and (provably_subset(a.left, b) or provably_subset(a.right, b)):
        return True
    if isinstance(a, Diff) and provably_subset(a.left, b):
        return True
    if isinstance(a, Counted) and a.traits.within is not None and provably_subset(a.traits.within, b):
        return True
    if isinstance(b, Union):
        return provably_subset(a, b.left) or provably_subset(a, b.right)
    if isinstance(b, Inter):
        return provably_subset(a, b.left) and provably_subset(a, b.right)
    return False


# Density

class DensityResult(Record):
    kind: Literal["exact", "bounds", "unknown"]
    value: Optional[Fraction] = None
    lower: Optional[Fraction] = None
    upper: Optional[Fraction] = None
    window: Optional[int] = None


@lru_cache(maxsize=4096)
def exact_density(e: SetExpr) -> Optional[Fraction]:
    """Asymptotic density when a rule certifies it, else None."""
    p = periodic_form(e)
    if p is not None:
        return p.density
    if isinstance(e, Counted):
        return e.traits.density
    if isinstance(e, Compl):
        d = exact_density(e.inner)
        return None if d is None else 1 - d
    if isinstance(e, Finite):
        return Fraction(0)
    if isinstance(e, Arith):
        return Fraction(1, e.m)
    if isinstance(e, Block):
        return Fraction(1, 1 << e.i)
    if isinstance(e, Tail):
        return Fraction(1)
    left, right = exact_density(e.left), exact_density(e.right)
    if isinstance(e, Union):
        if left == 1 or right == 1:
            return Fraction(1)
        if left is None or right is None:
            return None
        if left == 0 or right == 0:
            return left + right
        both = exact_density(inter(e.left, e.right))
        return None if both is None else left + right - both
    if isinstance(e, Inter):
        if left == 0 or right == 0:
            return Fraction(0)
        if left == 1:
            return right
        if right == 1:
            return left
        if provably_subset(e.left, e.right):
            return left
        if provably_subset(e.right, e.left):
            return right
        return None
    if left == 0 or right == 1:
        return Fraction(0)
    if right == 0:
        return left
    return None


@lru_cache(maxsize=4096)
def lower_density_bound(e: SetExpr) -> Fraction:
    """A certified lower bound on the lower density; 0 when nothing is known."""
    d = exact_density(e)
    if d is not None:
        return d
    if isinstance(e, Union):
        return max(lower_density_bound(e.left), lower_density_bound(e.right))
    if isinstance(e, Inter):
        return max(Fraction(0), lower_density_bound(e.left) + lower_density_bound(e.right) - 1)
    if isinstance(e, Diff):
        return max(Fraction(0), lower_density_bound(e.left) - _upper_density_bound(e.right))
    if isinstance(e, Compl):
        return 1 - _upper_density_bound(e.inner)
    return Fraction(0)


def _upper_density_bound(e: SetExpr) -> Fraction:
    d = exact_density(e)
    if d is not None:
        return d
    if isinstance(e, Compl):
        return 1 - lower_density_bound(e.inner)
    if isinstance(e, Inter):
        return min(_upper_density_bound(e.left), _upper_density_bound(e.right))
    if isinstance(e, Diff):
        return _upper_density_bound(e.left)
    if isinstance(e, Counted) and e.traits.within is not None:
        return _upper_density_bound(e.traits.within)
    return Fraction(1)


def density(e: SetExpr, window: int = 65536) -> DensityResult:
    if window < 1:
        raise ArgumentError(f"window {window} must be >= 1")
    d = exact_density(e)
    if d is not None:
        return DensityResult(kind="exact", value=d)
    if window < 2:
        return DensityResult(kind="unknown", window=window)
    ratios = [Fraction(count_prefix(e, n), n) for n in upper_half_checkpoints(window)]
    logger.debug("density of %s bounded over window %d", e, window)
    return DensityResult(kind="bounds", lower=min(ratios), upper=max(ratios), window=window)


# Per-block structure

Level = Tuple[int, int]
NONE: Level = (0, 0)
SOME: Level = (1, 1)
MANY: Level = (2, 2)
ANY: Level = (0, 2)


@dataclass(frozen=True)
class BlockProfile:
    """Bounds on two counts, each on the scale 0 = none, 1 = finitely many
    (at least one), 2 = infinitely many.

    traces  number of blocks meeting the set in an infinite set
    blocks  number of blocks the set meets
    infinite_blocks  blocks known to carry an infinite trace
    met_blocks       the exact list of blocks met, when finite and known
    """
    traces: Level
    blocks: Level
    infinite_blocks: Tuple[int, ...] = ()
    met_blocks: Optional[Tuple[int, ...]] = None


def _valuation2(n: int) -> int:
    return (n & -n).bit_length() - 1


def _periodic_profile(p: Periodic) -> BlockProfile:
    a = _valuation2(p.period)
    step = 1 << a
    # blocks beyond a see every residue class that is a multiple of 2^a
    deep = any(r % step == 0 for r in p.residues)
    infinite, met = [], set()
    for i in range(1, a + 1):
        trace = _combine(p, periodic_form(Block(i)), frozenset.intersection)
        if trace.residues:
            infinite.append(i)
        if trace.residues or trace.head:
            met.add(i)
    met.update(_valuation2(h) + 1 for h in p.head)
    if deep:
        return BlockProfile(MANY, MANY, tuple(infinite) + (a + 1,), None)
    traces = SOME if infinite else NONE
    blocks = SOME if met else NONE
    return BlockProfile(traces, blocks, tuple(infinite), tuple(sorted(met)))


def _meet(x: Level, y: Level) -> Level:
    lo, hi = max(x[0], y[0]), min(x[1], y[1])
    return (lo, hi) if lo <= hi else (hi, hi)


@lru_cache(maxsize=4096)
def block_profile(e: SetExpr) -> BlockProfile:
    p = periodic_form(e)
    if p is not None:
        return _periodic_profile(p)
    infinite: Tuple[int, ...] = ()
    if isinstance(e, Counted):
        traces, blocks = ANY, ANY
        t = e.traits
        if t.within is not None:
            w = block_profile(t.within)
            traces, blocks = (0, w.traces[1]), (0, w.blocks[1])
            if t.unbounded and w.met_blocks is not None and len(w.met_blocks) == 1:
                infinite = w.met_blocks
        if t.finite_traces:
            traces = NONE
        if t.many_blocks:
            blocks = MANY
    elif isinstance(e, Union):
        l, r = block_profile(e.left), block_profile(e.right)
        traces = (max(l.traces[0], r.traces[0]), max(l.traces[1], r.traces[1]))
        blocks = (max(l.blocks[0], r.blocks[0]), max(l.blocks[1], r.blocks[1]))
        infinite = tuple(sorted(set(l.infinite_blocks) | set(r.infinite_blocks)))
    elif isinstance(e, (Inter, Diff)):
        l = block_profile(e.left)
        traces, blocks = (0, l.traces[1]), (0, l.blocks[1])
        if isinstance(e, Inter):
            r = block_profile(e.right)
            traces, blocks = (0, min(l.traces[1], r.traces[1])), (0, min(l.blocks[1], r.blocks[1]))
    elif isinstance(e, Compl) and block_profile(e.inner).traces[1] == 0:
        traces, blocks = MANY, MANY
    else:
        traces, blocks = ANY, ANY
    return _refine(e, traces, blocks, infinite)


def _refine(e: SetExpr, traces: Level, blocks: Level, infinite: Tuple[int, ...]) -> BlockProfile:
    finiteness = classify_finiteness(e)
    if finiteness is Finiteness.FINITE:
        traces, blocks = NONE, (blocks[0], min(blocks[1], 1))
    elif finiteness is Finiteness.INFINITE:
        blocks = _meet(blocks, (1, 2))
        if blocks[1] <= 1:
            traces = _meet(traces, (1, 2))
        if traces[1] == 0:
            blocks = MANY
    if infinite:
        traces = _meet(traces, (1, 2))
    return BlockProfile(traces, blocks, infinite, None)


def block_trace(e: SetExpr, i: int) -> SetExpr:
    """e ∩ Block(i)"""
    if i < 1:
        raise ArgumentError(f"block index {i} must be >= 1")
    return inter(e, Block(i))


# Derived subsets

def _every_other_periodic(p: Periodic) -> Optional[Periodic]:
    head = sorted(p.head)
    picked_head = frozenset(head[0::2])
    period = 2 * p.period
    if period > MAX_PERIOD:
        return None
    index = len(head)
    residues = set()
    for n in range(p.start, p.start + period):
        if n % p.period in p.residues:
            if index % 2 == 0:
                residues.add(n % period)
            index += 1
    return Periodic(p.start, period, frozenset(residues), picked_head)


def every_other(e: SetExpr) -> SetExpr:
    """Keep the 1st, 3rd, 5th, ... element of e."""
    p = periodic_form(e)
    if p is not None:
        q = _every_other_periodic(p)
        if q is not None:
            return from_periodic(q)
    d = exact_density(e)
    traits = CountedTraits(
        unbounded=classify_finiteness(e) is Finiteness.INFINITE,
        density=None if d is None else d / 2,
        within=e,
    )
    return Counted(f"every_other({e})", lambda N: members(e, N)[0::2], traits=traits)


def square_subsample(e: SetExpr) -> SetExpr:
    """The elements of e at positions 1, 4, 9, 16, ...; always of density 0."""
    if e == NAT:
        return SQUARES

    def generate(N: int):
        elements = members(e, N)
        k = 1
        while k * k <= len(elements):
            yield elements[k * k - 1]
            k += 1

    traits = CountedTraits(
        unbounded=classify_finiteness(e) is Finiteness.INFINITE,
        density=Fraction(0),
        within=e,
    )
    return Counted(f"square_subsample({e})", generate, traits=traits)


def union_all(parts: Iterable[SetExpr]) -> SetExpr:
    return union(*parts)
