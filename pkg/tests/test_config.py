"""Tests for environment-driven settings (src/quiverlab/config.py)."""

import pytest

from quiverlab import config
from quiverlab.config import Settings, get_settings, load_settings, reset_settings
from quiverlab.exceptions import ConfigurationError


# ---------------------------------------------------------------------------
# load_settings
# ---------------------------------------------------------------------------
class TestLoadSettings:
    def test_defaults(self):
        settings = load_settings({})
        assert settings == Settings()
        assert settings.default_field == "Q"
        assert settings.log_level == "WARNING"
        assert settings.step_budget == 64
        assert settings.run_log_dir is None

    def test_overrides(self):
        settings = load_settings(
            {
                "QUIVERLAB_DEFAULT_FIELD": "GF(3)",
                "QUIVERLAB_LOG_LEVEL": "debug",
                "QUIVERLAB_STEP_BUDGET": "8",
                "QUIVERLAB_ROOT_BOX": "4",
                "QUIVERLAB_RUN_LOG_DIR": "runs",
            }
        )
        assert settings.default_field == "GF(3)"
        assert settings.log_level == "DEBUG"
        assert settings.step_budget == 8
        assert settings.root_box == 4
        assert settings.run_log_dir == "runs"

    def test_empty_values_fall_back(self):
        settings = load_settings({"QUIVERLAB_SEARCH_LIMIT": "", "QUIVERLAB_LOG_FILE": ""})
        assert settings.search_limit == 64
        assert settings.log_file is None

    @pytest.mark.parametrize("raw", ["ten", "0", "-3"])
    def test_bad_integer(self, raw):
        with pytest.raises(ConfigurationError) as exc:
            load_settings({"QUIVERLAB_STEP_BUDGET": raw})
        assert exc.value.config_key == "QUIVERLAB_STEP_BUDGET"

    def test_bad_log_level(self):
        with pytest.raises(ConfigurationError):
            load_settings({"QUIVERLAB_LOG_LEVEL": "LOUD"})


# ---------------------------------------------------------------------------
# Cached settings
# ---------------------------------------------------------------------------
class TestCachedSettings:
    def test_reset_with_explicit_settings(self):
        custom = Settings(step_budget=5)
        assert reset_settings(custom) is custom
        assert get_settings().step_budget == 5

    def test_reload_from_environment(self, monkeypatch):
        monkeypatch.setenv("QUIVERLAB_SEARCH_LIMIT", "12")
        assert reset_settings().search_limit == 12

    def test_lazy_load(self, monkeypatch):
        monkeypatch.setenv("QUIVERLAB_ROOT_BOX", "3")
        config._settings = None
        assert get_settings().root_box == 3
