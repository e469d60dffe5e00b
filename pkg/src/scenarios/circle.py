from ..circle import (ALPHA_POINT, circle_converges_to_alpha, circle_e, circle_not_hausdorff, cofinite_convergence,
                      grid_injectivity)
from ..ideals import EvenFinIdeal, FinIdeal
from ..seq import fiber_map
from ..setexpr import EVENS, NAT, ODDS, Arith, Block, Tail, compl, diff, finite, union
from .base import Scenario


def sampled_sequences():
    """Ten fiber patterns into S¹, each read under fin and i1."""
    p0, p1, p2 = circle_e(0.0), circle_e(0.5), circle_e(3.0)
    a = ALPHA_POINT
    patterns = [
        [(a, ODDS), (p0, EVENS)],
        [(a, EVENS), (p0, ODDS)],
        [(a, compl(finite([1, 2, 3]))), (p0, finite([1, 2, 3]))],
        [(p0, Block(1)), (a, compl(Block(1)))],
        [(a, Tail(1))],
        [(p0, Arith(0, 4)), (p1, Arith(2, 4)), (a, ODDS)],
        [(p0, finite([2])), (p1, finite([5])), (a, compl(finite([2, 5])))],
        [(p0, Arith(1, 4)), (p1, Arith(3, 4)), (a, EVENS)],
        [(p0, Block(2)), (p1, Block(3)), (a, diff(NAT, union(Block(2), Block(3))))],
        [(p2, Arith(0, 3)), (a, compl(Arith(0, 3)))],
    ]
    return [(fiber_map(pairs), ideal) for pairs in patterns for ideal in (FinIdeal(), EvenFinIdeal())]


class CircleScenario(Scenario):
    name = "circle"
    topic = "ℝ compactified inside S¹"
    description = "embedding checks, α-convergence against cofinite neighbourhoods, non-Hausdorff certificate"

    def build_report(self):
        rows = []
        for seq, ideal in sampled_sequences():
            fiber_rule = circle_converges_to_alpha(seq, ideal).value
            direct = cofinite_convergence(seq, ideal)
            rows.append({"sequence": str(seq), "ideal": ideal.name, "fiber_rule": fiber_rule,
                         "cofinite": direct, "agree": fiber_rule == direct})
        alpha_pair = circle_not_hausdorff()
        arc_pair = circle_not_hausdorff(circle_e(0.0), circle_e(3.0))
        return {
            "e_0": circle_e(0.0),
            "e_3": circle_e(3.0),
            "corrected": grid_injectivity(),
            "printed": grid_injectivity(printed=True),
            "sampled": len(rows),
            "agreements": sum(1 for row in rows if row["agree"]),
            "convergence": rows,
            "alpha_pair": alpha_pair,
            "arc_pair": arc_pair,
        }
