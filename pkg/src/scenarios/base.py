import json
import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, ClassVar, Dict, List, Optional

from ..config import Config
from ..errors import PreconditionError
from ..report import Record, to_jsonable

logger = logging.getLogger(__name__)

GOLDEN_DIR = Path(__file__).parent / "golden"


class ScenarioResult(Record):
    scenario: str
    passed: bool
    mismatches: List[str]
    report: Dict[str, Any]


def compare(expected: Any, actual: Any, path: str = "$") -> List[str]:
    """Key paths where `actual` differs from `expected`; keys absent from `expected` are ignored."""
    if isinstance(expected, dict):
        if not isinstance(actual, dict):
            return [f"{path}: expected an object, got {json.dumps(actual, ensure_ascii=False)}"]
        mismatches = []
        for key, value in expected.items():
            if key not in actual:
                mismatches.append(f"{path}.{key}: missing")
            else:
                mismatches.extend(compare(value, actual[key], f"{path}.{key}"))
        return mismatches
    if expected != actual:
        return [f"{path}: expected {json.dumps(expected, ensure_ascii=False)}, "
                f"got {json.dumps(actual, ensure_ascii=False)}"]
    return []


class Scenario(ABC):
    """A reproducible computation with a committed expected report."""
    name: ClassVar[str]
    topic: ClassVar[str]
    description: ClassVar[str]

    def __init__(self, config: Optional[Config] = None, parallel: bool = False):
        self.config = config or Config()
        self.parallel = parallel

    @abstractmethod
    def build_report(self) -> Dict[str, Any]:
        """Run the pipeline and return the full report."""

    def golden(self) -> Dict[str, Any]:
        path = GOLDEN_DIR / f"{self.name}.json"
        if not path.exists():
            raise PreconditionError(f"no golden file for scenario {self.name}")
        return json.loads(path.read_text(encoding="utf-8"))

    def run(self) -> ScenarioResult:
        logger.info("running scenario %s", self.name)
        report = to_jsonable(self.build_report(), self.config.float_digits)
        mismatches = compare(self.golden(), report)
        return ScenarioResult(scenario=self.name, passed=not mismatches, mismatches=mismatches, report=report)
