"""One-point I-compactification of finite spaces.

The new point α gets the neighbourhoods U ∪ {α} for every open U whose
complement is I-compact. On a finite base every subspace is I-compact, so
{α} itself is open: α is isolated and the base is open but not dense.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Union

from .errors import ConstructionError, SizeError
from .ideals import Ideal
from .report import Record
from .topolab import (DEFAULT_MODULUS, FinMap, FinSpace, PreimageReport, check_preimages, enumerate_topologies,
                      find_homeomorphism, is_hausdorff as space_is_hausdorff, is_i_compact, is_i_continuous,
                      is_i_sequential, is_i_us, is_locally_i_compact, min_nbhd)

logger = logging.getLogger(__name__)

ALPHA = "α"
MAX_BASE_POINTS = 5


@dataclass(frozen=True)
class OnePointSpace:
    base: FinSpace
    alpha: str
    space: FinSpace

    @property
    def opens(self):
        return self.space.opens


def fresh_label(points, label: str = ALPHA) -> str:
    while label in points:
        label += "'"
    return label


def build_onepoint(base: FinSpace, ideal: Ideal, modulus: int = DEFAULT_MODULUS) -> OnePointSpace:
    if len(base.points) > MAX_BASE_POINTS:
        raise SizeError(f"one-point extensions are limited to {MAX_BASE_POINTS} base points")
    alpha = fresh_label(base.points)
    extra = {u | {alpha} for u in base.opens
             if is_i_compact(base.subspace(base.full - u), ideal, modulus).compact}
    try:
        space = FinSpace(base.points + (alpha,), base.opens | extra)
    except ConstructionError as e:
        raise ConstructionError(f"one-point extension of {base} is not a topology: {e}") from e
    return OnePointSpace(base, alpha, space)


def is_hausdorff(t: Union[OnePointSpace, FinSpace]) -> bool:
    return space_is_hausdorff(t.space if isinstance(t, OnePointSpace) else t)


class OnePointReport(Record):
    base: str
    alpha: str
    opens: List[List[str]]
    base_open: bool
    base_dense: bool
    alpha_isolated: bool
    i_compact: bool
    hausdorff: bool


def describe(t: OnePointSpace, ideal: Ideal, modulus: int = DEFAULT_MODULUS) -> OnePointReport:
    alpha_nbhd = min_nbhd(t.space, t.alpha)
    return OnePointReport(
        base=str(t.base),
        alpha=t.alpha,
        opens=t.space.canonical_opens(),
        base_open=t.space.is_open(t.base.points),
        base_dense=not t.base.points or bool(alpha_nbhd & t.base.full),
        alpha_isolated=alpha_nbhd == frozenset({t.alpha}),
        i_compact=is_i_compact(t.space, ideal, modulus).compact,
        hausdorff=is_hausdorff(t),
    )


class ExtensionReport(Record):
    extension: Dict[str, str]
    continuous: bool
    homeomorphism: bool
    i_continuous: bool
    i_proper: Optional[bool]
    preimages: Optional[PreimageReport]


def extend_map(f: FinMap, ideal: Ideal, modulus: int = DEFAULT_MODULUS) -> ExtensionReport:
    """Extend f by α ↦ α and report continuity next to the preimage checks for f."""
    source = build_onepoint(f.source, ideal, modulus)
    target = build_onepoint(f.target, ideal, modulus)
    extended = FinMap(source.space, target.space, f.assignment + ((source.alpha, target.alpha),))
    continuous = extended.is_continuous()
    homeomorphism = continuous and extended.is_bijective() and extended.inverse().is_continuous()
    i_continuous = is_i_continuous(f, ideal, modulus)
    preimages = check_preimages(f, ideal, modulus) if i_continuous else None
    return ExtensionReport(
        extension=dict(extended.assignment),
        continuous=continuous,
        homeomorphism=homeomorphism,
        i_continuous=i_continuous,
        i_proper=None if preimages is None else preimages.compact_preimages,
        preimages=preimages,
    )


def homeo_search(t1: OnePointSpace, t2: Union[OnePointSpace, FinSpace]) -> Optional[Dict[str, str]]:
    """A homeomorphism sending α to α when both sides carry one; identity tried first."""
    if isinstance(t2, OnePointSpace):
        return find_homeomorphism(t1.space, t2.space, {t1.alpha: t2.alpha})
    return find_homeomorphism(t1.space, t2)


class TransferReport(Record):
    sequential_transfer: bool
    us_transfer: bool
    local_compactness_transfer: bool


def check_transfers(base: FinSpace, ideal: Ideal, modulus: int = DEFAULT_MODULUS) -> TransferReport:
    """X sequential ⇒ X̂ sequential; X US ⇒ X̂ US; X̂ Hausdorff and sequential ⇒ X locally compact."""
    t = build_onepoint(base, ideal, modulus)
    sequential = not is_i_sequential(base, ideal, modulus) or is_i_sequential(t.space, ideal, modulus)
    us = not is_i_us(base, ideal, modulus) or is_i_us(t.space, ideal, modulus)
    hypothesis = is_hausdorff(t) and is_i_sequential(t.space, ideal, modulus)
    local = not hypothesis or is_locally_i_compact(base, ideal, modulus)
    return TransferReport(sequential_transfer=sequential, us_transfer=us, local_compactness_transfer=local)


class OnePointLabReport(Record):
    ideal: str
    n_max: int
    counts: Dict[str, int]
    failures: List[str]


FACTS = ("valid", "base_open", "alpha_isolated", "i_compact", "homeomorphic_rebuilds", "hausdorff",
         "hausdorff_iff_discrete", "sequential_transfer", "us_transfer", "local_compactness_transfer")


def _facts(task) -> Dict[str, bool]:
    base, ideal, modulus = task
    try:
        t = build_onepoint(base, ideal, modulus)
    except ConstructionError:
        return {name: False for name in FACTS}
    report = describe(t, ideal, modulus)
    transfers = check_transfers(base, ideal, modulus)
    return {
        "valid": True,
        "base_open": report.base_open,
        "alpha_isolated": report.alpha_isolated,
        "i_compact": report.i_compact,
        "homeomorphic_rebuilds": homeo_search(t, build_onepoint(base, ideal, modulus)) is not None,
        "hausdorff": report.hausdorff,
        "hausdorff_iff_discrete": report.hausdorff == base.is_discrete(),
        "sequential_transfer": transfers.sequential_transfer,
        "us_transfer": transfers.us_transfer,
        "local_compactness_transfer": transfers.local_compactness_transfer,
    }


def onepoint_lab(n_max: int, ideal: Ideal, modulus: int = DEFAULT_MODULUS,
                 parallel: bool = False) -> OnePointLabReport:
    """Build X̂ for every labelled topology on at most n_max points and tally its properties."""
    spaces = [s for n in range(1, n_max + 1) for s in enumerate_topologies(n)]
    tasks = [(s, ideal, modulus) for s in spaces]
    if parallel:
        with ProcessPoolExecutor() as executor:
            results = list(executor.map(_facts, tasks, chunksize=16))
    else:
        results = [_facts(task) for task in tasks]
    counts = {"spaces": len(spaces)}
    counts.update({name: sum(1 for r in results if r[name]) for name in FACTS})
    expected_everywhere = [name for name in FACTS if name != "hausdorff"]
    failures = [f"{name} fails on {spaces[i]}" for i, r in enumerate(results)
                for name in expected_everywhere if not r[name]]
    logger.info("one-point lab over %d spaces for %s: %d failures", len(spaces), ideal, len(failures))
    return OnePointLabReport(ideal=str(ideal), n_max=n_max, counts=counts, failures=failures[:10])
