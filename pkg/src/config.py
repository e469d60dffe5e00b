import json
import logging
import os
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List

from dotenv import load_dotenv
from pydantic import BaseModel, ValidationError, field_validator

from .errors import ArgumentError

logger = logging.getLogger(__name__)

ENV_PREFIX = "IDEALCONV_"
ENV_KEYS = ("window", "density_window", "log_level")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Config(BaseModel):
    window: int = 4096
    density_window: int = 65536
    epsilon_grid: List[str] = ["1/2", "1/4", "1/8", "1/16", "1/32", "1/64", "1/128", "1/256"]
    corpus_modulus: int = 2
    float_digits: int = 12
    log_level: str = "WARNING"

    @field_validator("window", "density_window", "float_digits")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be a positive integer")
        return value

    @field_validator("corpus_modulus")
    @classmethod
    def _modulus_range(cls, value: int) -> int:
        if not 1 <= value <= 4:
            raise ValueError("corpus modulus must lie in 1..4")
        return value

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        value = value.upper()
        if value not in LOG_LEVELS:
            raise ValueError(f"unknown log level {value}")
        return value

    @field_validator("epsilon_grid")
    @classmethod
    def _descending_grid(cls, value: List[str]) -> List[str]:
        grid = [Fraction(item) for item in value]
        if not grid or any(eps <= 0 for eps in grid):
            raise ValueError("epsilon grid must be non-empty and positive")
        if any(b >= a for a, b in zip(grid, grid[1:])):
            raise ValueError("epsilon grid must be strictly decreasing")
        return value

    def epsilon_fractions(self) -> List[Fraction]:
        return [Fraction(item) for item in self.epsilon_grid]


class ConfigManager:
    def __init__(self, config_dir: Path = None):
        self.config_dir = config_dir or Path.home() / ".idealconv"
        self.config_file = self.config_dir / "config.json"
        self._ensure_config_exists()

    def _ensure_config_exists(self):
        """Create the config directory and a default file on first use."""
        try:
            self.config_dir.mkdir(parents=True, exist_ok=True)
            if not self.config_file.exists():
                self.save_config(Config())
        except OSError as e:
            logger.debug("config directory unavailable, using defaults: %s", e)

    def _read_file(self) -> Dict[str, Any]:
        try:
            return json.loads(self.config_file.read_text())
        except Exception:
            return {}

    @staticmethod
    def _env_overrides() -> Dict[str, Any]:
        load_dotenv()
        overrides = {}
        for key in ENV_KEYS:
            raw = os.environ.get(f"{ENV_PREFIX}{key.upper()}")
            if raw is not None:
                overrides[key] = raw
        return overrides

    def load_config(self) -> Config:
        """Load the file, then apply IDEALCONV_* environment overrides."""
        data = self._read_file()
        try:
            stored = Config(**data)
        except ValidationError:
            logger.warning("ignoring invalid config file %s", self.config_file)
            stored = Config()
        overrides = self._env_overrides()
        if not overrides:
            return stored
        try:
            return Config(**{**stored.model_dump(), **overrides})
        except ValidationError as e:
            raise ArgumentError(f"invalid environment override: {e.errors()[0]['msg']}") from e

    def save_config(self, config: Config):
        self.config_file.write_text(config.model_dump_json(indent=2))

    def update_config(self, **kwargs):
        """Validate and persist new values; unknown keys are rejected."""
        config = self._read_file()
        try:
            current = Config(**config)
        except ValidationError:
            current = Config()
        unknown = [key for key in kwargs if key not in Config.model_fields]
        if unknown:
            raise ArgumentError(f"unknown config key: {', '.join(unknown)}")
        try:
            updated = Config(**{**current.model_dump(), **kwargs})
        except ValidationError as e:
            raise ArgumentError(f"invalid config value: {e.errors()[0]['msg']}") from e
        self.save_config(updated)
        return updated
