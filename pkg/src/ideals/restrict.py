import logging
from dataclasses import dataclass

from ..setexpr import Finiteness, SetExpr, classify_finiteness, members, provably_subset
from .base import Ideal, MembershipVerdict, Verdict, outside, undecided

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RestrictedIdeal(Ideal):
    """The trace I|M = {A ⊆ M : A ∈ I} of an ideal on a subset M."""
    base: Ideal = None
    domain: SetExpr = None
    window: int = 4096

    name = "restrict"

    def _finite_member(self, a: SetExpr) -> bool:
        return False

    def decide(self, a: SetExpr) -> MembershipVerdict:
        if not provably_subset(a, self.domain):
            stray = set(members(a, self.window)) - set(members(self.domain, self.window))
            if stray:
                return outside(f"{min(stray)} ∈ {a} lies outside {self.domain}")
            inner = self.base.contains(a)
            if inner.verdict is Verdict.OUT:
                return inner
            return undecided(f"{a} ⊆ {self.domain} only checked up to {self.window}")
        return self.base.contains(a)

    def __str__(self):
        return f"restrict({self.base},{self.domain})"


def restrict(ideal: Ideal, domain: SetExpr) -> RestrictedIdeal:
    if classify_finiteness(domain) is Finiteness.FINITE:
        logger.warning("restricting %s to the finite set %s gives a non-admissible trace", ideal, domain)
    return RestrictedIdeal(base=ideal, domain=domain)


