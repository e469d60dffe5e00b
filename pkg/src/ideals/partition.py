"""Ideals defined through the block partition Δ1, Δ2, ... of ℕ."""
from dataclasses import dataclass

from ..setexpr import SetExpr, block_profile
from .base import Ideal, MembershipVerdict, inside, outside, undecided


def _blocks_hint(a: SetExpr) -> str:
    profile = block_profile(a)
    if profile.met_blocks is not None:
        return f"meets blocks {list(profile.met_blocks)}"
    return "meets an undetermined family of blocks"


@dataclass(frozen=True)
class MeetsFinBlocksIdeal(Ideal):
    """Sets meeting only finitely many blocks."""
    name = "i2"

    def decide(self, a: SetExpr) -> MembershipVerdict:
        blocks = block_profile(a).blocks
        if blocks[1] <= 1:
            return inside(f"{a} {_blocks_hint(a)}")
        if blocks[0] == 2:
            return outside(f"{a} meets infinitely many blocks")
        return undecided(f"number of blocks met by {a} is not decided")


@dataclass(frozen=True)
class FinPerBlockIdeal(Ideal):
    """Sets whose trace on every block is finite."""
    name = "i3"

    def decide(self, a: SetExpr) -> MembershipVerdict:
        profile = block_profile(a)
        if profile.traces[1] == 0:
            return inside(f"every block trace of {a} is finite")
        if profile.traces[0] >= 1:
            if profile.infinite_blocks:
                return outside(f"{a} ∩ block({profile.infinite_blocks[0]}) is infinite")
            return outside(f"{a} is infinite inside finitely many blocks")
        return undecided(f"block traces of {a} are not decided")


@dataclass(frozen=True)
class LocalBlocksIdeal(Ideal):
    """Sets with an infinite trace on only finitely many blocks."""
    name = "local-blocks"

    def decide(self, a: SetExpr) -> MembershipVerdict:
        traces = block_profile(a).traces
        if traces[1] <= 1:
            return inside(f"{a} has finitely many infinite block traces")
        if traces[0] == 2:
            return outside(f"{a} has infinitely many infinite block traces")
        return undecided(f"block traces of {a} are not decided")
