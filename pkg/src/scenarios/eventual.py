from ..dsl import parse_sequence
from ..ideals import EvenFinIdeal, FinIdeal
from ..seq import Region, i_cluster_points, i_converges, i_eventually_constant, i_eventually_in, is_nonthin
from .base import Scenario

ALTERNATING = "fibers{0:arith(1,2);1:arith(0,2)}"


class EventualConstancyScenario(Scenario):
    name = "eventually-constant"
    topic = "alternating 0/1 sequence"
    description = "0 on odd indices, 1 on even ones: eventually 0 modulo even sets, not modulo finite sets"

    def build_report(self):
        seq = parse_sequence(ALTERNATING)
        grid = self.config.epsilon_fractions()
        report = {"sequence": str(seq)}
        for ideal in (EvenFinIdeal(), FinIdeal()):
            report[ideal.name] = {
                "nonthin": is_nonthin(seq, ideal),
                "eventually_constant": i_eventually_constant(seq, ideal),
                "converges_to_0": i_converges(seq, 0, ideal, grid).verdict,
                "cluster_points": i_cluster_points(seq, ideal, [0, 1], grid),
                "eventually_in_zero": i_eventually_in(seq, Region(points=[0]), ideal).value,
            }
        return report
