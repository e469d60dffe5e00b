from dataclasses import dataclass

from ..report import format_fraction
from ..setexpr import SetExpr, density, exact_density, lower_density_bound
from .base import Ideal, MembershipVerdict, inside, outside, undecided


@dataclass(frozen=True)
class DensityZeroIdeal(Ideal):
    """Sets of asymptotic density zero.

    Only certified densities decide membership; sampled bounds over a
    window are reported but never used as a proof.
    """
    name = "id"
    window: int = 65536

    def decide(self, a: SetExpr) -> MembershipVerdict:
        d = exact_density(a)
        if d == 0:
            return inside(f"d({a}) = 0")
        if d is not None:
            return outside(f"d({a}) = {format_fraction(d)}")
        lower = lower_density_bound(a)
        if lower > 0:
            return outside(f"lower density of {a} is at least {format_fraction(lower)}")
        sampled = density(a, self.window)
        if sampled.kind == "bounds":
            return undecided(f"sampled density of {a} lies in "
                             f"[{format_fraction(sampled.lower)}, {format_fraction(sampled.upper)}] "
                             f"on window {self.window}")
        return undecided(f"density of {a} is not decided")
