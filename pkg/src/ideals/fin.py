from dataclasses import dataclass

from ..setexpr import Finiteness, SetExpr, classify_finiteness
from .base import Ideal, MembershipVerdict, outside, undecided


@dataclass(frozen=True)
class FinIdeal(Ideal):
    """The finite subsets of ℕ."""
    name = "fin"

    def decide(self, a: SetExpr) -> MembershipVerdict:
        if classify_finiteness(a) is Finiteness.INFINITE:
            return outside(f"{a} is infinite")
        return undecided(f"finiteness of {a} is not decided")
