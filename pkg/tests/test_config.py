"""Tests for configuration management."""
from pathlib import Path
from unittest.mock import patch

import pytest

from src.config import Config, ConfigManager
from src.errors import ArgumentError


def test_config_default_values():
    """Test default configuration values."""
    config = Config()
    assert config.window == 4096
    assert config.density_window == 65536
    assert config.epsilon_grid[0] == "1/2"
    assert config.corpus_modulus == 2
    assert config.float_digits == 12
    assert config.log_level == "WARNING"


def test_config_validation():
    """Invalid values are rejected by the model."""
    with pytest.raises(ValueError):
        Config(window=0)
    with pytest.raises(ValueError):
        Config(corpus_modulus=5)
    with pytest.raises(ValueError):
        Config(epsilon_grid=["1/4", "1/2"])
    with pytest.raises(ValueError):
        Config(log_level="LOUD")
    assert Config(log_level="debug").log_level == "DEBUG"


def test_epsilon_fractions():
    """The grid is exposed as fractions."""
    assert Config(epsilon_grid=["1/2", "1/8"]).epsilon_fractions()[1].denominator == 8


def test_config_manager_save_load(config_manager):
    """Test saving and loading configuration."""
    config_manager.save_config(Config(window=512))
    assert config_manager.config_file.exists()
    assert config_manager.load_config().window == 512


def test_config_manager_default_location(temp_dir, clean_env, monkeypatch):
    """Without a directory the config lives under the home directory."""
    monkeypatch.setattr(Path, "home", lambda: temp_dir)
    manager = ConfigManager()
    assert manager.config_file == temp_dir / ".idealconv" / "config.json"
    assert manager.config_file.exists()


def test_config_manager_update(config_manager):
    """Test updating configuration values."""
    config_manager.update_config(window="2048")
    config = config_manager.load_config()
    assert config.window == 2048
    assert config.density_window == 65536


def test_config_manager_update_rejects(config_manager):
    """Unknown keys and invalid values raise argument errors."""
    with pytest.raises(ArgumentError):
        config_manager.update_config(colour="blue")
    with pytest.raises(ArgumentError):
        config_manager.update_config(window="-3")
    assert config_manager.load_config().window == 4096


def test_invalid_file_falls_back(config_manager):
    """A corrupt config file is ignored with a warning."""
    config_manager.config_file.write_text('{"window": 0}')
    with patch("src.config.logger") as mock_logger:
        assert config_manager.load_config().window == 4096
    mock_logger.warning.assert_called_once()


def test_environment_overrides(config_manager, monkeypatch):
    """IDEALCONV_* variables override the file."""
    config_manager.update_config(window="2048")
    monkeypatch.setenv("IDEALCONV_WINDOW", "128")
    monkeypatch.setenv("IDEALCONV_LOG_LEVEL", "info")
    config = config_manager.load_config()
    assert config.window == 128
    assert config.log_level == "INFO"


def test_invalid_environment_override(config_manager, monkeypatch):
    """Bad overrides are argument errors."""
    monkeypatch.setenv("IDEALCONV_DENSITY_WINDOW", "zero")
    with pytest.raises(ArgumentError):
        config_manager.load_config()
