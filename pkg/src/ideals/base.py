"""Common interface of the ideal catalog."""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import ClassVar, List

from ..errors import ArgumentError
from ..report import Record
from ..setexpr import NAT, Finite, Finiteness, SetExpr, classify_finiteness

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    IN = "in"
    OUT = "out"
    UNKNOWN = "unknown"


class MembershipVerdict(Record):
    verdict: Verdict
    certificate: str


class AdmissibilityReport(Record):
    ideal: str
    admissible: bool
    checked_singletons: int
    failed_singletons: List[int]
    contains_nat: Verdict


@dataclass(frozen=True)
class Ideal(ABC):
    """An ideal on the natural numbers, decided on symbolic sets.

    Catalog ideals are admissible, so every finite set is a member; the
    check happens here before the ideal-specific rule runs.
    """
    name: ClassVar[str] = ""

    @abstractmethod
    def decide(self, a: SetExpr) -> MembershipVerdict:
        """Ideal-specific decision for a set that is not known to be finite."""

    def contains(self, a: SetExpr) -> MembershipVerdict:
        return _contains(self, a)

    def _finite_member(self, a: SetExpr) -> bool:
        return True

    def is_admissible(self, window: int = 1024) -> AdmissibilityReport:
        if window < 1:
            raise ArgumentError(f"window {window} must be >= 1")
        failed = [n for n in range(1, window + 1)
                  if self.contains(Finite((n,))).verdict is not Verdict.IN]
        nat = self.contains(NAT).verdict
        return AdmissibilityReport(
            ideal=str(self),
            admissible=not failed and nat is Verdict.OUT,
            checked_singletons=window,
            failed_singletons=failed[:16],
            contains_nat=nat,
        )

    def __str__(self):
        return self.name


@lru_cache(maxsize=65536)
def _contains(ideal: Ideal, a: SetExpr) -> MembershipVerdict:
    if ideal._finite_member(a) and classify_finiteness(a) is Finiteness.FINITE:
        return MembershipVerdict(verdict=Verdict.IN, certificate=f"{a} is finite")
    result = ideal.decide(a)
    logger.debug("%s ∋ %s: %s", ideal, a, result.verdict.value)
    return result


def inside(certificate: str) -> MembershipVerdict:
    return MembershipVerdict(verdict=Verdict.IN, certificate=certificate)


def outside(certificate: str) -> MembershipVerdict:
    return MembershipVerdict(verdict=Verdict.OUT, certificate=certificate)


def undecided(certificate: str) -> MembershipVerdict:
    return MembershipVerdict(verdict=Verdict.UNKNOWN, certificate=certificate)
