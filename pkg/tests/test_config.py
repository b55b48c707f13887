import logging

import pytest

from swtorsion.config import Settings, get_env, get_int_env
from swtorsion.errors import ConfigError
from swtorsion.log import ensure_logger_configured, owned_handlers


def test_get_env_defaults(monkeypatch):
    monkeypatch.setenv("SWTORSION_TEST_VALUE", "  ")
    assert get_env("SWTORSION_TEST_VALUE", "fallback") == "fallback"
    monkeypatch.setenv("SWTORSION_TEST_VALUE", " 7 ")
    assert get_int_env("SWTORSION_TEST_VALUE", 1) == 7


def test_get_int_env_rejects_garbage(monkeypatch):
    monkeypatch.setenv("SWTORSION_TEST_VALUE", "seven")
    with pytest.raises(ConfigError, match="SWTORSION_TEST_VALUE"):
        get_int_env("SWTORSION_TEST_VALUE", 1)


def test_settings_defaults():
    settings = Settings()
    assert settings.property_cases == 200
    assert settings.server_port == 8060


def test_logger_is_configured_once():
    ensure_logger_configured("DEBUG")
    ensure_logger_configured("INFO")
    logger = logging.getLogger("swtorsion")
    assert len(owned_handlers(logger)) == 1
    assert logger.level == logging.INFO
    ensure_logger_configured("WARNING")


def test_foreign_handlers_keep_their_level():
    logger = logging.getLogger("swtorsion")
    foreign = logging.NullHandler()
    foreign.setLevel(logging.ERROR)
    logger.addHandler(foreign)
    try:
        ensure_logger_configured("DEBUG")
        ensure_logger_configured("INFO")
        assert foreign.level == logging.ERROR
        assert foreign not in owned_handlers(logger)
        assert len(owned_handlers(logger)) == 1
        assert owned_handlers(logger)[0].level == logging.INFO
    finally:
        logger.removeHandler(foreign)
        ensure_logger_configured("WARNING")
