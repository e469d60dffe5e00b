"""The circle model: ℝ embedded in S¹ with the point at infinity α = (0, -1).

Open sets are usual open sets of S¹ that miss α, together with cofinite
subsets of S¹ that contain α. The |x| > 1 branch of the embedding carries
a sign flip on the second coordinate; without it the map retraces the
upper half circle and is not injective.
"""
import logging
import math
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import ArgumentError, DomainError, PreconditionError, UnsupportedPresentationError
from .ideals import Ideal, Verdict, restrict
from .report import Record
from .seq import Codomain, FiberMap, SeqPresentation, TruthVerdict
from .setexpr import union_all

logger = logging.getLogger(__name__)

TOLERANCE = 1e-9
ALPHA_POINT = (0.0, -1.0)
GRID = np.arange(-5000, 5001) / 100.0

Point = Tuple[float, float]


def circle_e(x: float) -> Point:
    if abs(x) <= 1:
        return (float(x), math.sqrt(1 - x * x))
    d = x * x + 1
    return (2 * x / d, -(x * x - 1) / d)


def circle_e_printed(x: float) -> Point:
    """The embedding without the sign flip; collides with the |x| <= 1 branch."""
    if abs(x) <= 1:
        return (float(x), math.sqrt(1 - x * x))
    d = x * x + 1
    return (2 * x / d, (x * x - 1) / d)


def on_circle(p: Point) -> bool:
    return abs(math.hypot(p[0], p[1]) - 1) <= TOLERANCE


def is_alpha(p: Point) -> bool:
    return math.dist(p, ALPHA_POINT) <= TOLERANCE


def circle_e_inverse(p: Point) -> float:
    if not on_circle(p):
        raise DomainError(f"{p} is not on the unit circle")
    if is_alpha(p):
        raise DomainError("α has no preimage")
    u, v = p
    return u if v >= 0 else u / (1 + v)


def _e_array(xs: np.ndarray, printed: bool = False) -> np.ndarray:
    inner = np.abs(xs) <= 1
    clipped = np.clip(xs, -1.0, 1.0)
    d = xs * xs + 1
    sign = 1.0 if printed else -1.0
    u = np.where(inner, xs, 2 * xs / d)
    v = np.where(inner, np.sqrt(1 - clipped * clipped), sign * (xs * xs - 1) / d)
    return np.column_stack((u, v))


class InjectivityReport(Record):
    injective: bool
    points: int
    min_gap: float
    max_norm_error: float
    collision: Optional[Tuple[float, float]] = None


def grid_injectivity(printed: bool = False, grid: Optional[np.ndarray] = None) -> InjectivityReport:
    """Sort the images by angle; the map is injective on the grid iff neighbours stay apart."""
    xs = GRID if grid is None else np.asarray(grid, dtype=float)
    pts = _e_array(xs, printed)
    order = np.argsort(np.arctan2(pts[:, 1], pts[:, 0]), kind="stable")
    ordered = pts[order]
    gaps = np.linalg.norm(ordered - np.roll(ordered, -1, axis=0), axis=1)
    i = int(np.argmin(gaps))
    min_gap = float(gaps[i])
    norm_error = float(np.max(np.abs(np.hypot(pts[:, 0], pts[:, 1]) - 1)))
    injective = min_gap > TOLERANCE
    collision = None
    if not injective:
        j = (i + 1) % len(order)
        collision = tuple(sorted((float(xs[order[i]]), float(xs[order[j]]))))
    return InjectivityReport(injective=injective, points=len(xs), min_gap=min_gap,
                             max_norm_error=norm_error, collision=collision)


@dataclass(frozen=True)
class CircleModel:
    """A sampled universe of circle points plus the rule-based topology."""
    universe: Tuple[Point, ...]
    alpha: Point = ALPHA_POINT

    @classmethod
    def sampled(cls, xs: Sequence[float] = (-3.0, -1.0, -0.5, 0.0, 0.5, 1.0, 3.0, 10.0)) -> "CircleModel":
        return cls(tuple(circle_e(x) for x in xs) + (ALPHA_POINT,))

    def cofinite_neighbourhood(self, excluded: Sequence[Point]) -> Tuple[Point, ...]:
        """Sampled trace of S¹ minus a finite set; always contains α."""
        if any(is_alpha(p) for p in excluded):
            raise ArgumentError("a neighbourhood of α cannot exclude α")
        return tuple(p for p in self.universe if all(math.dist(p, q) > TOLERANCE for q in excluded))


def _fibers(seq: SeqPresentation) -> Tuple[Tuple[Point, object], ...]:
    if not isinstance(seq.body, FiberMap) or seq.codomain is not Codomain.PLANE:
        raise UnsupportedPresentationError("circle sequences are fiber maps into the plane")
    for p, _ in seq.body.fibers:
        if not on_circle(p):
            raise DomainError(f"{p} is not on the unit circle")
    return seq.body.fibers


def circle_converges_to_alpha(seq: SeqPresentation, ideal: Ideal) -> TruthVerdict:
    """Every fiber of a value other than α must lie in I|M."""
    trace = restrict(ideal, seq.domain)
    verdicts = []
    for p, fiber in _fibers(seq):
        if is_alpha(p):
            continue
        verdicts.append((p, trace.contains(fiber)))
    out = [p for p, v in verdicts if v.verdict is Verdict.OUT]
    if out:
        return TruthVerdict(value=False, certificate=f"fiber of {out[0]} is outside {trace}")
    if all(v.verdict is Verdict.IN for _, v in verdicts):
        return TruthVerdict(value=True, certificate=f"{len(verdicts)} non-α fibers lie in {trace}")
    return TruthVerdict(value=None, certificate="some fiber membership is undecided")


def cofinite_convergence(seq: SeqPresentation, ideal: Ideal) -> Optional[bool]:
    """Direct check over the cofinite neighbourhoods S¹ ∖ F of α, F ranging over sets of values."""
    trace = restrict(ideal, seq.domain)
    fibers = [(p, fiber) for p, fiber in _fibers(seq) if not is_alpha(p)]
    undecided = False
    for k in range(len(fibers) + 1):
        for chosen in combinations(fibers, k):
            escaping = union_all(fiber for _, fiber in chosen)
            verdict = trace.contains(escaping).verdict
            if verdict is Verdict.OUT:
                return False
            undecided = undecided or verdict is Verdict.UNKNOWN
    return None if undecided else True


def _angle(p: Point) -> float:
    return math.atan2(p[1], p[0])


def _angular_distance(p: Point, q: Point) -> float:
    d = abs(_angle(p) - _angle(q)) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


def _on_arc(center: Point, offset: float) -> Point:
    theta = _angle(center) + offset
    return (math.cos(theta), math.sin(theta))


class HausdorffCertificate(Record):
    pair: Tuple[Point, Point]
    separable: bool
    argument: List[str]
    instance: dict


def circle_not_hausdorff(p: Point = ALPHA_POINT, q: Optional[Point] = None) -> HausdorffCertificate:
    """Certificate that α and a circle point cannot be separated, or a separating pair of arcs."""
    q = circle_e(0.0) if q is None else q
    for point in (p, q):
        if not on_circle(point):
            raise DomainError(f"{point} is not on the unit circle")
    if math.dist(p, q) <= TOLERANCE:
        raise PreconditionError("the two points coincide")
    if is_alpha(q):
        p, q = q, p
    if is_alpha(p):
        delta = min(0.1, _angular_distance(q, ALPHA_POINT) / 2)
        excluded = [q, _on_arc(q, delta), _on_arc(q, -delta)]
        common = _on_arc(q, delta / 2)
        return HausdorffCertificate(
            pair=(p, q),
            separable=False,
            argument=[
                "every open set containing α is a cofinite subset of S¹",
                "every open set containing the other point contains an arc around it, hence infinitely many points",
                "an infinite set meets every cofinite set, so the two neighbourhoods always intersect",
            ],
            instance={
                "arc_center": q,
                "arc_half_width": delta,
                "excluded_points": excluded,
                "common_point": common,
            },
        )
    delta = min(_angular_distance(p, q), _angular_distance(p, ALPHA_POINT),
                _angular_distance(q, ALPHA_POINT)) / 3
    return HausdorffCertificate(
        pair=(p, q),
        separable=True,
        argument=["open arcs of half-width delta around each point are disjoint and miss α"],
        instance={"arc_half_width": delta, "first_arc": [p], "second_arc": [q]},
    )
