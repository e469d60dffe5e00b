"""Finite topological spaces and ideal-based sequential notions on them.

A sequence into a finite space is a partition of its index set into
fibers, one per value; convergence to x then only asks whether the fibers
of the points outside the minimal neighbourhood of x lie in the ideal.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import chain, combinations, permutations, product
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ArgumentError, ConsistencyError, ConstructionError, PreconditionError, SizeError
from .ideals import Ideal, Verdict, restrict
from .report import Record
from .setexpr import NAT, Arith, SetExpr, union_all

logger = logging.getLogger(__name__)

MAX_POINTS = 6
MAX_ENUMERATED = 4
LABELS = "abcdef"
DEFAULT_MODULUS = 2

Opens = FrozenSet[FrozenSet[str]]


def powerset(points: Sequence[str]) -> Iterator[FrozenSet[str]]:
    return (frozenset(c) for c in chain.from_iterable(combinations(points, k) for k in range(len(points) + 1)))


def _canonical(family: Iterable[FrozenSet[str]], order: Sequence[str]) -> List[List[str]]:
    rank = {p: i for i, p in enumerate(order)}
    listed = [sorted(s, key=rank.__getitem__) for s in family]
    return sorted(listed, key=lambda s: (len(s), [rank[p] for p in s]))


@dataclass(frozen=True)
class FinSpace:
    points: Tuple[str, ...]
    opens: Opens

    def __post_init__(self):
        points = tuple(self.points)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "opens", frozenset(frozenset(u) for u in self.opens))
        if len(points) > MAX_POINTS:
            raise SizeError(f"{len(points)} points exceed the limit of {MAX_POINTS}")
        if len(set(points)) != len(points):
            raise ConstructionError("point labels must be distinct")
        full = frozenset(points)
        if frozenset() not in self.opens or full not in self.opens:
            raise ConstructionError("the empty set and the whole space must be open")
        for u in self.opens:
            if not u <= full:
                raise ConstructionError(f"open set {sorted(u)} mentions unknown points")
        for u, v in combinations(self.opens, 2):
            if u | v not in self.opens or u & v not in self.opens:
                raise ConstructionError(f"opens {sorted(u)} and {sorted(v)} break closure")

    @classmethod
    def from_opens(cls, points: Sequence[str], opens: Iterable[Iterable[str]]) -> "FinSpace":
        return cls(tuple(points), frozenset(frozenset(u) for u in opens))

    @classmethod
    def discrete(cls, points: Sequence[str]) -> "FinSpace":
        return cls(tuple(points), frozenset(powerset(points)))

    @classmethod
    def indiscrete(cls, points: Sequence[str]) -> "FinSpace":
        return cls(tuple(points), frozenset({frozenset(), frozenset(points)}))

    @property
    def full(self) -> FrozenSet[str]:
        return frozenset(self.points)

    def is_open(self, a: Iterable[str]) -> bool:
        return frozenset(a) in self.opens

    def is_closed(self, a: Iterable[str]) -> bool:
        return self.full - frozenset(a) in self.opens

    def closed_sets(self) -> List[FrozenSet[str]]:
        return [self.full - u for u in self.opens]

    def is_discrete(self) -> bool:
        return len(self.opens) == 1 << len(self.points)

    def subspace(self, subset: Iterable[str]) -> "FinSpace":
        subset = frozenset(subset)
        if not subset <= self.full:
            raise ArgumentError(f"{sorted(subset - self.full)} are not points of the space")
        return FinSpace(tuple(p for p in self.points if p in subset),
                        frozenset(u & subset for u in self.opens))

    def canonical_opens(self) -> List[List[str]]:
        return _canonical(self.opens, self.points)

    def __str__(self):
        opens = ", ".join("{" + ",".join(u) + "}" for u in self.canonical_opens())
        return f"space{{points: {','.join(self.points)}; opens: {opens}}}"


def _check_point(space: FinSpace, x: str) -> None:
    if x not in space.full:
        raise ArgumentError(f"{x!r} is not a point of {space}")


def _check_subset(space: FinSpace, a: FrozenSet[str]) -> None:
    if not a <= space.full:
        raise ArgumentError(f"{sorted(a - space.full)} are not points of {space}")


@lru_cache(maxsize=8192)
def min_nbhd(space: FinSpace, x: str) -> FrozenSet[str]:
    """Intersection of all open sets containing x."""
    _check_point(space, x)
    result = space.full
    for u in space.opens:
        if x in u:
            result &= u
    return result


def classical_closure(space: FinSpace, a: Iterable[str]) -> FrozenSet[str]:
    a = frozenset(a)
    return frozenset(x for x in space.points if min_nbhd(space, x) & a)


def is_t1(space: FinSpace) -> bool:
    return all(space.is_closed({x}) for x in space.points)


def is_hausdorff(space: FinSpace) -> bool:
    """Distinct points have disjoint minimal neighbourhoods."""
    return all(not (min_nbhd(space, x) & min_nbhd(space, y)) for x, y in combinations(space.points, 2))


# Sequences

@dataclass(frozen=True)
class FinSeq:
    space: FinSpace
    fibers: Tuple[Tuple[str, SetExpr], ...]
    domain: SetExpr = NAT

    def __post_init__(self):
        for p, _ in self.fibers:
            _check_point(self.space, p)

    def values(self) -> FrozenSet[str]:
        return frozenset(p for p, _ in self.fibers)

    def compose(self, f: "FinMap") -> "FinSeq":
        grouped: Dict[str, List[SetExpr]] = {}
        for p, fiber in self.fibers:
            grouped.setdefault(f(p), []).append(fiber)
        fibers = tuple((y, union_all(parts)) for y, parts in sorted(grouped.items()))
        if len(fibers) == 1:
            fibers = ((fibers[0][0], self.domain),)
        return FinSeq(f.target, fibers, self.domain)

    def __str__(self):
        return "fibers{" + ";".join(f"{p}:{fiber}" for p, fiber in self.fibers) + "}"


def _residue_maps(points: Sequence[str], m: int) -> Iterator[Tuple[str, ...]]:
    """Maps Z/m -> points that do not factor through a smaller modulus."""
    divisors = [d for d in range(1, m) if m % d == 0]
    for g in product(points, repeat=m):
        if any(all(g[r] == g[r % d] for r in range(m)) for d in divisors):
            continue
        yield g


def fiber_corpus(space: FinSpace, values: Optional[Iterable[str]] = None,
                 modulus: int = DEFAULT_MODULUS) -> List[FinSeq]:
    """Constant sequences and residue-class fiber maps mod 2..modulus with values in `values`."""
    if not 1 <= modulus <= 4:
        raise ArgumentError(f"corpus modulus {modulus} must lie in 1..4")
    allowed = None if values is None else frozenset(values)
    pts = tuple(p for p in space.points if allowed is None or p in allowed)
    return _fiber_corpus(space, pts, modulus)


@lru_cache(maxsize=4096)
def _fiber_corpus(space: FinSpace, pts: Tuple[str, ...], modulus: int) -> List[FinSeq]:
    corpus = [FinSeq(space, ((p, NAT),)) for p in pts]
    for m in range(2, modulus + 1):
        for g in _residue_maps(pts, m):
            grouped: Dict[str, List[SetExpr]] = {}
            for r, p in enumerate(g):
                grouped.setdefault(p, []).append(Arith(r, m))
            fibers = tuple((p, union_all(parts)) for p, parts in sorted(grouped.items()))
            corpus.append(FinSeq(space, fibers))
    return corpus


def _trace(ideal: Ideal, domain: SetExpr) -> Ideal:
    return ideal if domain == NAT else restrict(ideal, domain)


@lru_cache(maxsize=65536)
def seq_limits(s: FinSeq, ideal: Ideal) -> FrozenSet[str]:
    """Points x such that the fibers of values outside min_nbhd(x) form a set in I|M."""
    if ideal.contains(s.domain).verdict is not Verdict.OUT:
        raise PreconditionError(f"{s} is not certified nonthin for {ideal}")
    trace = _trace(ideal, s.domain)
    limits = []
    for x in s.space.points:
        nbhd = min_nbhd(s.space, x)
        outside = [fiber for p, fiber in s.fibers if p not in nbhd]
        if not outside or trace.contains(union_all(outside)).verdict is Verdict.IN:
            limits.append(x)
    return frozenset(limits)


@lru_cache(maxsize=65536)
def _closure(space: FinSpace, a: FrozenSet[str], ideal: Ideal, modulus: int) -> FrozenSet[str]:
    result: FrozenSet[str] = frozenset()
    for s in fiber_corpus(space, a, modulus):
        result |= seq_limits(s, ideal)
    return result


def i_closure(space: FinSpace, a: Iterable[str], ideal: Ideal, modulus: int = DEFAULT_MODULUS) -> FrozenSet[str]:
    a = frozenset(a)
    _check_subset(space, a)
    return _closure(space, a, ideal, modulus)


def is_i_closed(space: FinSpace, a: Iterable[str], ideal: Ideal, modulus: int = DEFAULT_MODULUS) -> bool:
    a = frozenset(a)
    return i_closure(space, a, ideal, modulus) == a


def is_i_open(space: FinSpace, a: Iterable[str], ideal: Ideal, modulus: int = DEFAULT_MODULUS) -> bool:
    a = frozenset(a)
    _check_subset(space, a)
    return is_i_closed(space, space.full - a, ideal, modulus)


def i_closed_sets(space: FinSpace, ideal: Ideal, modulus: int = DEFAULT_MODULUS) -> List[FrozenSet[str]]:
    return [a for a in powerset(space.points) if is_i_closed(space, a, ideal, modulus)]


def is_i_us(space: FinSpace, ideal: Ideal, modulus: int = DEFAULT_MODULUS) -> bool:
    """Every corpus sequence has at most one limit."""
    return all(len(seq_limits(s, ideal)) <= 1 for s in fiber_corpus(space, modulus=modulus))


def is_i_sequential(space: FinSpace, ideal: Ideal, modulus: int = DEFAULT_MODULUS) -> bool:
    return all(space.is_closed(a) for a in i_closed_sets(space, ideal, modulus))


class CompactnessReport(Record):
    compact: bool
    witnesses: List[Tuple[str, str]]
    counterexample: Optional[str] = None


@lru_cache(maxsize=16384)
def is_i_compact(space: FinSpace, ideal: Ideal, modulus: int = DEFAULT_MODULUS) -> CompactnessReport:
    """Every corpus sequence has a nonthin fiber whose constant subsequence converges."""
    witnesses = []
    for s in fiber_corpus(space, modulus=modulus):
        found = None
        for p, fiber in s.fibers:
            if ideal.contains(fiber).verdict is Verdict.OUT and \
                    p in seq_limits(FinSeq(space, ((p, fiber),), fiber), ideal):
                found = p
                break
        if found is None:
            return CompactnessReport(compact=False, witnesses=witnesses, counterexample=str(s))
        witnesses.append((str(s), found))
    return CompactnessReport(compact=True, witnesses=witnesses)


def is_locally_i_compact(space: FinSpace, ideal: Ideal, modulus: int = DEFAULT_MODULUS) -> bool:
    """Each point has an open neighbourhood inside an I-compact subset."""
    for x in space.points:
        nbhd = min_nbhd(space, x)
        candidates = sorted((c for c in powerset(space.points) if nbhd <= c), key=len)
        if not any(is_i_compact(space.subspace(c), ideal, modulus).compact for c in candidates):
            return False
    return True


# Maps

@dataclass(frozen=True)
class FinMap:
    source: FinSpace
    target: FinSpace
    assignment: Tuple[Tuple[str, str], ...] = field(default=())

    def __post_init__(self):
        table = dict(self.assignment)
        if set(table) != set(self.source.points) or len(table) != len(self.assignment):
            raise ArgumentError("a map must assign exactly one image to every source point")
        for y in table.values():
            _check_point(self.target, y)
        object.__setattr__(self, "assignment", tuple(sorted(table.items())))

    @classmethod
    def from_dict(cls, source: FinSpace, target: FinSpace, table: Dict[str, str]) -> "FinMap":
        return cls(source, target, tuple(table.items()))

    def __call__(self, x: str) -> str:
        return dict(self.assignment)[x]

    def image(self, a: Iterable[str]) -> FrozenSet[str]:
        return frozenset(self(x) for x in a)

    def preimage(self, b: Iterable[str]) -> FrozenSet[str]:
        b = frozenset(b)
        return frozenset(x for x, y in self.assignment if y in b)

    def is_bijective(self) -> bool:
        return len(self.image(self.source.points)) == len(self.source.points) == len(self.target.points)

    def inverse(self) -> "FinMap":
        if not self.is_bijective():
            raise PreconditionError("only bijections have inverses")
        return FinMap(self.target, self.source, tuple((y, x) for x, y in self.assignment))

    def is_continuous(self) -> bool:
        return all(self.source.is_open(self.preimage(u)) for u in self.target.opens)


def all_maps(source: FinSpace, target: FinSpace) -> Iterator[FinMap]:
    for images in product(target.points, repeat=len(source.points)):
        yield FinMap(source, target, tuple(zip(source.points, images)))


def _sequentially_continuous(f: FinMap, ideal: Ideal, modulus: int) -> bool:
    for s in fiber_corpus(f.source, modulus=modulus):
        image_limits = seq_limits(s.compose(f), ideal)
        if any(f(x) not in image_limits for x in seq_limits(s, ideal)):
            return False
    return True


def _preimage_continuous(f: FinMap, ideal: Ideal, modulus: int) -> bool:
    return all(is_i_closed(f.source, f.preimage(b), ideal, modulus)
               for b in i_closed_sets(f.target, ideal, modulus))


def is_i_continuous(f: FinMap, ideal: Ideal, modulus: int = DEFAULT_MODULUS) -> bool:
    sequential = _sequentially_continuous(f, ideal, modulus)
    preimage = _preimage_continuous(f, ideal, modulus)
    if sequential != preimage:
        raise ConsistencyError(
            f"sequential ({sequential}) and preimage ({preimage}) continuity disagree for {dict(f.assignment)}")
    return sequential


def is_i_homeomorphism(f: FinMap, ideal: Ideal, modulus: int = DEFAULT_MODULUS) -> bool:
    return f.is_bijective() and is_i_continuous(f, ideal, modulus) and is_i_continuous(f.inverse(), ideal, modulus)


def is_i_embedding(f: FinMap, ideal: Ideal, modulus: int = DEFAULT_MODULUS) -> bool:
    """Injective and an I-homeomorphism onto its image subspace."""
    image = f.image(f.source.points)
    if len(image) != len(f.source.points):
        return False
    onto = FinMap(f.source, f.target.subspace(image), f.assignment)
    return is_i_homeomorphism(onto, ideal, modulus)


def is_i_closed_map(f: FinMap, ideal: Ideal, modulus: int = DEFAULT_MODULUS) -> bool:
    return all(is_i_closed(f.target, f.image(a), ideal, modulus)
               for a in i_closed_sets(f.source, ideal, modulus))


class PreimageReport(Record):
    compact_preimages: bool
    compact_subsets_checked: int
    limit_preimages: bool
    convergent_sequences_checked: int
    failures: List[str]


def check_preimages(f: FinMap, ideal: Ideal, modulus: int = DEFAULT_MODULUS) -> PreimageReport:
    """Preimages of I-compact sets, and of the closure of convergent sequences, are I-compact."""
    if not is_i_continuous(f, ideal, modulus):
        raise PreconditionError("the map is not I-continuous")
    compact_failures, limit_failures = [], []
    compact_checked = 0
    for b in powerset(f.target.points):
        if is_i_compact(f.target.subspace(b), ideal, modulus).compact:
            compact_checked += 1
            if not is_i_compact(f.source.subspace(f.preimage(b)), ideal, modulus).compact:
                compact_failures.append(f"preimage of {sorted(b)} is not I-compact")
    sequences_checked = 0
    for s in fiber_corpus(f.target, modulus=modulus):
        limits = seq_limits(s, ideal)
        if not limits:
            continue
        sequences_checked += 1
        closure = s.values() | limits
        if not is_i_compact(f.source.subspace(f.preimage(closure)), ideal, modulus).compact:
            limit_failures.append(f"preimage of the closure of {s} is not I-compact")
    return PreimageReport(compact_preimages=not compact_failures, compact_subsets_checked=compact_checked,
                          limit_preimages=not limit_failures, convergent_sequences_checked=sequences_checked,
                          failures=compact_failures + limit_failures)


def is_i_proper(f: FinMap, ideal: Ideal, modulus: int = DEFAULT_MODULUS) -> bool:
    """I-continuous with I-compact preimages of I-compact sets."""
    return is_i_continuous(f, ideal, modulus) and check_preimages(f, ideal, modulus).compact_preimages


def find_homeomorphism(s1: FinSpace, s2: FinSpace, fixed: Optional[Dict[str, str]] = None) -> Optional[Dict[str, str]]:
    """A bijection carrying opens onto opens, honouring the fixed assignments; identity tried first."""
    fixed = fixed or {}
    if len(s1.points) != len(s2.points) or len(s1.opens) != len(s2.opens):
        return None
    free_source = [p for p in s1.points if p not in fixed]
    free_target = [p for p in s2.points if p not in fixed.values()]
    orders = [tuple(free_target)] + [perm for perm in permutations(free_target) if perm != tuple(free_target)]
    for perm in orders:
        table = dict(fixed)
        table.update(zip(free_source, perm))
        if frozenset(frozenset(table[p] for p in u) for u in s1.opens) == s2.opens:
            return table
    return None


# Enumeration

def _transitive(relation: np.ndarray) -> bool:
    step = relation.astype(np.uint8)
    composed = (step @ step) > 0
    return bool(np.all(~composed | relation))


def enumerate_topologies(n: int) -> Iterator[FinSpace]:
    """All topologies on the labels a, b, ... (n of them), via specialisation preorders."""
    if n > MAX_ENUMERATED:
        raise SizeError(f"enumeration is limited to {MAX_ENUMERATED} points")
    if n < 0:
        raise ArgumentError("n must be nonnegative")
    points = tuple(LABELS[:n])
    off_diagonal = [(i, j) for i in range(n) for j in range(n) if i != j]
    masks = [np.array([p in s for p in points], dtype=bool) for s in powerset(points)]
    subsets = list(powerset(points))
    for bits in product((False, True), repeat=len(off_diagonal)):
        relation = np.eye(n, dtype=bool)
        for (i, j), bit in zip(off_diagonal, bits):
            relation[i, j] = bit
        if not _transitive(relation):
            continue
        opens = frozenset(u for u, mask in zip(subsets, masks)
                          if not np.any(relation[mask] & ~mask))
        yield FinSpace(points, opens)


def count_topologies_brute_force(n: int) -> int:
    """Independent count: filter every family of subsets containing ∅ and the whole set."""
    if n > MAX_ENUMERATED:
        raise SizeError(f"enumeration is limited to {MAX_ENUMERATED} points")
    points = tuple(LABELS[:n])
    middle = [s for s in powerset(points) if s and len(s) < n]
    total = 0
    for choice in product((False, True), repeat=len(middle)):
        family = {frozenset(), frozenset(points)} | {s for s, keep in zip(middle, choice) if keep}
        if all(u | v in family and u & v in family for u, v in combinations(family, 2)):
            total += 1
    return total


# Exhaustive checks

PROPERTIES = ("closure-collapse", "compact", "us-t1", "sequential", "continuity")


class LabReport(Record):
    property: str
    ideal: str
    n_max: int
    instances: int
    failures: int
    examples: List[str]
    topologies: Dict[str, int]


def _space_failures(task: Tuple[str, FinSpace, Ideal, int]) -> List[str]:
    prop, space, ideal, modulus = task
    if prop == "closure-collapse":
        return [f"{space} A={sorted(a)}" for a in powerset(space.points)
                if i_closure(space, a, ideal, modulus) != classical_closure(space, a)]
    if prop == "compact":
        return [] if is_i_compact(space, ideal, modulus).compact else [str(space)]
    if prop == "us-t1":
        return [] if is_i_us(space, ideal, modulus) == is_t1(space) else [str(space)]
    if prop == "sequential":
        return [] if is_i_sequential(space, ideal, modulus) else [str(space)]
    raise ArgumentError(f"unknown property {prop}")


def _map_failures(task: Tuple[FinSpace, Tuple[FinSpace, ...], Ideal, int]) -> Tuple[int, List[str]]:
    source, targets, ideal, modulus = task
    count, failures = 0, []
    for target in targets:
        for f in all_maps(source, target):
            count += 1
            try:
                is_i_continuous(f, ideal, modulus)
            except ConsistencyError as e:
                failures.append(str(e))
    return count, failures


def run_lab(prop: str, n_max: int, ideal: Ideal, modulus: int = DEFAULT_MODULUS,
            parallel: bool = False) -> LabReport:
    """Check a property on every labelled topology with at most n_max points."""
    if prop not in PROPERTIES:
        raise ArgumentError(f"unknown property {prop}; expected one of {', '.join(PROPERTIES)}")
    if prop == "continuity" and n_max > 3:
        raise SizeError("continuity checks are limited to 3 points")
    spaces = [s for n in range(1, n_max + 1) for s in enumerate_topologies(n)]
    counts = {str(n): sum(1 for s in spaces if len(s.points) == n) for n in range(1, n_max + 1)}
    mapper = map
    executor = None
    if parallel:
        executor = ProcessPoolExecutor()
        mapper = executor.map
    try:
        if prop == "continuity":
            tasks = [(s, tuple(spaces), ideal, modulus) for s in spaces]
            results = list(mapper(_map_failures, tasks))
            instances = sum(c for c, _ in results)
            failures = [msg for _, fs in results for msg in fs]
        else:
            tasks = [(prop, s, ideal, modulus) for s in spaces]
            failures = [msg for fs in mapper(_space_failures, tasks) for msg in fs]
            instances = len(spaces)
    finally:
        if executor is not None:
            executor.shutdown()
    logger.info("%s over %d instances for %s: %d failures", prop, instances, ideal, len(failures))
    return LabReport(property=prop, ideal=str(ideal), n_max=n_max, instances=instances,
                     failures=len(failures), examples=failures[:5], topologies=counts)
