from ..ideals import DensityZeroIdeal
from ..seq import dyadic_analysis, increasing_extract
from ..setexpr import NAT
from ..shrink import CWitness
from .base import Scenario

K_MAX = 15


class ExtractionScenario(Scenario):
    name = "increasing-extraction"
    topic = "dyadic sequence decreasing on each block"
    description = ("no increasing subsequence of the dyadic counterexample has a range of positive density; "
                   "the greedy range through B = ℕ is density zero")

    def build_report(self):
        seq, analysis = dyadic_analysis(K_MAX)
        ideal = DensityZeroIdeal()
        extraction = increasing_extract(seq, ideal, CWitness(ideal, NAT, NAT), self.config.window)
        return {
            "sequence": str(seq),
            "analysis": analysis,
            "extraction": {
                "indices": extraction.indices[:8],
                "values": extraction.values[:8],
                "picked": len(extraction.values),
                "range_set": extraction.range_set,
                "membership": extraction.membership,
            },
        }
