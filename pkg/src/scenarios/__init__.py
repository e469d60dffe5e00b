from .base import Scenario, ScenarioResult, compare
from .circle import CircleScenario
from .eventual import EventualConstancyScenario
from .extraction import ExtractionScenario
from .labs import ContinuityLabScenario, OnePointLabScenario, SpaceLabScenario
from .shrinking import ShrinkingScenario

SCENARIOS = {
    cls.name: cls
    for cls in (EventualConstancyScenario, ShrinkingScenario, ExtractionScenario,
                ContinuityLabScenario, OnePointLabScenario, SpaceLabScenario, CircleScenario)
}

# Names used in the published examples
ALIASES = {
    "note-2.2": EventualConstancyScenario.name,
    "example-2.5": ShrinkingScenario.name,
    "prop-2.6": ExtractionScenario.name,
    "thm-2.10-lab": ContinuityLabScenario.name,
    "thm-2.13-lab": OnePointLabScenario.name,
    "circle-final": CircleScenario.name,
}


def get_scenario_class(name: str):
    return SCENARIOS.get(ALIASES.get(name, name))


def aliases_of(name: str) -> list:
    return [alias for alias, target in ALIASES.items() if target == name]


__all__ = [
    'ALIASES',
    'CircleScenario',
    'ContinuityLabScenario',
    'EventualConstancyScenario',
    'ExtractionScenario',
    'OnePointLabScenario',
    'SCENARIOS',
    'Scenario',
    'ScenarioResult',
    'ShrinkingScenario',
    'SpaceLabScenario',
    'aliases_of',
    'compare',
    'get_scenario_class',
]
