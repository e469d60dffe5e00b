from dataclasses import dataclass

from ..setexpr import EVENS, ODDS, Finiteness, SetExpr, classify_finiteness, inter, members, provably_subset
from .base import Ideal, MembershipVerdict, inside, outside, undecided


@dataclass(frozen=True)
class EvenFinIdeal(Ideal):
    """Sets whose odd part is finite: generated by the finite sets and 2ℕ."""
    name = "i1"
    window: int = 4096

    def decide(self, a: SetExpr) -> MembershipVerdict:
        if provably_subset(a, EVENS):
            return inside(f"{a} ⊆ 2ℕ")
        odd_part = inter(a, ODDS)
        finiteness = classify_finiteness(odd_part)
        if finiteness is Finiteness.FINITE:
            return inside(f"odd part of {a} is finite")
        if finiteness is Finiteness.INFINITE:
            return outside(f"odd part of {a} is infinite")
        if classify_finiteness(a) is Finiteness.INFINITE:
            witnesses = members(odd_part, self.window)[:3]
            if witnesses:
                return undecided(f"{a} is infinite and has odd elements {witnesses}, "
                                 f"but its odd part is not certified infinite")
        return undecided(f"cannot decide whether the odd part of {a} is finite")
