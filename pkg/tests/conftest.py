"""Pytest configuration and shared fixtures."""
import shutil
import tempfile
from pathlib import Path

import pytest

from src.config import ENV_KEYS, ENV_PREFIX, ConfigManager
from src.ideals import EvenFinIdeal, FinIdeal
from src.setexpr import EVENS, ODDS
from src.seq import fiber_map
from src.topolab import FinSpace


@pytest.fixture
def temp_dir():
    """Create a temporary directory for testing."""
    temp_dir = tempfile.mkdtemp()
    yield Path(temp_dir)
    shutil.rmtree(temp_dir)


@pytest.fixture
def clean_env(monkeypatch):
    """Remove IDEALCONV_* overrides inherited from the shell."""
    for key in ENV_KEYS:
        monkeypatch.delenv(f"{ENV_PREFIX}{key.upper()}", raising=False)
    monkeypatch.setattr("src.config.load_dotenv", lambda *args, **kwargs: False)


@pytest.fixture
def config_manager(temp_dir, clean_env):
    """A config manager writing into a temporary directory."""
    return ConfigManager(config_dir=temp_dir / ".idealconv")


@pytest.fixture
def fin():
    return FinIdeal()


@pytest.fixture
def i1():
    return EvenFinIdeal()


@pytest.fixture
def alternating():
    """0 on odd indices, 1 on even indices."""
    return fiber_map([(0, ODDS), (1, EVENS)])


@pytest.fixture
def sierpinski():
    return FinSpace.from_opens(["a", "b"], [[], ["a"], ["a", "b"]])


@pytest.fixture
def discrete2():
    return FinSpace.discrete(["a", "b"])
