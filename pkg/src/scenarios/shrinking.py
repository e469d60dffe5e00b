from ..ideals import DensityZeroIdeal, get_ideal_class
from ..setexpr import NAT
from ..shrink import DENSITY_CANDIDATES, EXAMPLE_CORPORA, CWitness, condc_verify, condc_witness
from .base import Scenario


class ShrinkingScenario(Scenario):
    name = "shrinking-witnesses"
    topic = "condition (C) on i1, i2, i3 and its failure for id"
    description = "builds and checks (C) witnesses on structured sets; every candidate for id is refuted"

    def build_report(self):
        window = self.config.window
        report = {}
        for name, corpus in EXAMPLE_CORPORA.items():
            ideal = get_ideal_class(name)()
            verdicts = [condc_verify(condc_witness(ideal, a), window) for a in corpus]
            report[name] = {
                "checked": len(corpus),
                "consistent": sum(1 for v in verdicts if v.consistent),
                "refuted": [str(a) for a, v in zip(corpus, verdicts) if not v.consistent],
                "witness_on_nat": condc_witness(ideal, NAT).record(),
            }
        id_ideal = DensityZeroIdeal()
        refutations = [condc_verify(CWitness(id_ideal, NAT, b), window) for b in DENSITY_CANDIDATES]
        report["id"] = {
            "candidates": len(DENSITY_CANDIDATES),
            "refuted": sum(1 for v in refutations if not v.consistent),
            "counterexamples": [v.counterexample for v in refutations],
        }
        return report
