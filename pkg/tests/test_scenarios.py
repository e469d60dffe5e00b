"""Tests for the scenario registry and the expected-report comparison."""
from unittest.mock import patch

import pytest

from src.config import Config
from src.errors import PreconditionError
from src.scenarios import (ALIASES, SCENARIOS, CircleScenario, ContinuityLabScenario, EventualConstancyScenario, Scenario,
                           SpaceLabScenario, aliases_of, compare, get_scenario_class)
from src.topolab import LabReport


def test_registry():
    """Every registered scenario has a committed expected report."""
    assert list(SCENARIOS) == ["eventually-constant", "shrinking-witnesses", "increasing-extraction",
                               "continuity-lab", "onepoint-lab", "space-lab", "circle"]
    for name, cls in SCENARIOS.items():
        assert get_scenario_class(name) is cls
        assert cls().golden()
    assert get_scenario_class("bogus") is None


def test_published_aliases():
    """The published example names resolve to the descriptive scenarios."""
    assert sorted(ALIASES) == ["circle-final", "example-2.5", "note-2.2", "prop-2.6", "thm-2.10-lab", "thm-2.13-lab"]
    for alias, target in ALIASES.items():
        assert get_scenario_class(alias) is SCENARIOS[target]
    assert get_scenario_class("note-2.2") is EventualConstancyScenario
    assert get_scenario_class("circle-final") is CircleScenario
    assert aliases_of("circle") == ["circle-final"]
    assert aliases_of("space-lab") == []


def test_compare():
    """Mismatches are reported by key path; extra keys are ignored."""
    assert compare({"a": 1}, {"a": 1, "b": 2}) == []
    assert compare({"a": {"b": 1}}, {"a": {}}) == ["$.a.b: missing"]
    assert compare({"a": [1, 2]}, {"a": [2, 1]}) == ["$.a: expected [1, 2], got [2, 1]"]
    assert compare({"a": {"b": 1}}, {"a": 3}) == ["$.a: expected an object, got 3"]
    assert compare({"x": "α"}, {"x": "β"}) == ['$.x: expected "α", got "β"']


def test_missing_golden():
    """A scenario without an expected report cannot run."""
    class Unlisted(Scenario):
        name = "unlisted"
        topic = "none"
        description = "no expected report"

        def build_report(self):
            return {}

    with pytest.raises(PreconditionError):
        Unlisted().run()


@pytest.mark.parametrize("name", ["note-2.2", "example-2.5", "prop-2.6", "circle-final"])
def test_scenarios_match(name):
    """The quick scenarios reproduce their expected reports."""
    result = get_scenario_class(name)(Config()).run()
    assert result.passed, result.mismatches
    assert result.scenario == ALIASES[name]


def test_continuity_lab_report_shape():
    """The lab scenario runs one lab per ideal and keys the reports by ideal name."""
    def fake_lab(prop, n_max, ideal, modulus, parallel):
        return LabReport(property=prop, ideal=str(ideal), n_max=n_max, instances=24872, failures=0,
                         examples=[], topologies={"1": 1, "2": 4, "3": 29})

    with patch("src.scenarios.labs.run_lab", side_effect=fake_lab) as mock_lab:
        result = ContinuityLabScenario(Config(), parallel=True).run()
    assert result.passed, result.mismatches
    assert mock_lab.call_count == 2
    assert mock_lab.call_args[0][4] is True


def test_scenario_logs_run():
    """Each run is logged."""
    with patch("src.scenarios.base.logger") as mock_logger:
        get_scenario_class("eventually-constant")().run()
    mock_logger.info.assert_called_once()


def test_space_lab_report_shape():
    """Both space properties run at four points under every catalog ideal."""
    def fake_lab(prop, n_max, ideal, modulus, parallel):
        return LabReport(property=prop, ideal=str(ideal), n_max=n_max, instances=389, failures=0,
                         examples=[], topologies={"1": 1, "2": 4, "3": 29, "4": 355})

    with patch("src.scenarios.labs.run_lab", side_effect=fake_lab) as mock_lab:
        result = SpaceLabScenario(Config()).run()
    assert result.passed, result.mismatches
    assert mock_lab.call_count == 12
    assert {call[0][1] for call in mock_lab.call_args_list} == {4}
    assert list(result.report) == ["closure-collapse", "us-t1"]
