from ..ideals import EvenFinIdeal, FinIdeal, catalog_ideals
from ..onepoint import onepoint_lab
from ..topolab import count_topologies_brute_force, run_lab
from .base import Scenario


class ContinuityLabScenario(Scenario):
    name = "continuity-lab"
    topic = "sequential vs preimage I-continuity"
    description = "every map between labelled topologies on at most 3 points, under fin and i1"

    def build_report(self):
        report = {}
        for ideal in (FinIdeal(), EvenFinIdeal()):
            report[ideal.name] = run_lab("continuity", 3, ideal, self.config.corpus_modulus, self.parallel)
        return report


class OnePointLabScenario(Scenario):
    name = "onepoint-lab"
    topic = "one-point I-compactification of finite spaces"
    description = "builds X̂ for every labelled topology on at most 4 points under fin and tallies its properties"

    def build_report(self):
        lab = onepoint_lab(4, FinIdeal(), self.config.corpus_modulus, self.parallel)
        return {
            "lab": lab,
            "brute_force_topologies": {str(n): count_topologies_brute_force(n) for n in range(1, 5)},
        }


class SpaceLabScenario(Scenario):
    name = "space-lab"
    topic = "closure collapse and I-US versus T1"
    description = "every labelled topology on at most 4 points, under every catalog ideal"

    properties = ("closure-collapse", "us-t1")

    def build_report(self):
        return {
            prop: {ideal.name: run_lab(prop, 4, ideal, self.config.corpus_modulus, self.parallel)
                   for ideal in catalog_ideals()}
            for prop in self.properties
        }
