"""
Settings for swtorsion.

Env (all optional):
- SWTORSION_LOG_LEVEL: logging level name (defaults to WARNING)
- SWTORSION_SEED: seed of the randomized property suites
- SWTORSION_PROPERTY_CASES: number of randomized cases per property suite
- SWTORSION_SERVER_HOST / SWTORSION_SERVER_PORT: bind address of the tool server
"""

import os
from functools import lru_cache
from pathlib import Path

from dotenv import load_dotenv
from pydantic import BaseModel, Field

from .errors import ConfigError

# Load environment variables from .env next to the package, then from the cwd
load_dotenv(Path(__file__).with_name(".env"))
load_dotenv()


def get_env(name: str, default: str) -> str:
    """Return an environment variable, falling back to ``default`` when unset or blank."""
    value = os.getenv(name)
    if value is None or not value.strip():
        return default
    return value.strip()


def get_int_env(name: str, default: int) -> int:
    """Return an integer environment variable.

    Raises:
        ConfigError: the variable is set but is not an integer.
    """
    raw = get_env(name, str(default))
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"Environment variable {name} must be an integer, got {raw!r}") from None


class Settings(BaseModel):
    """Runtime settings."""

    log_level: str = Field(default="WARNING")
    seed: int = Field(default=20240601)
    property_cases: int = Field(default=200, ge=1)
    server_host: str = Field(default="127.0.0.1")
    server_port: int = Field(default=8060, ge=1, le=65535)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Read settings from the environment once per process."""
    return Settings(
        log_level=get_env("SWTORSION_LOG_LEVEL", "WARNING").upper(),
        seed=get_int_env("SWTORSION_SEED", 20240601),
        property_cases=get_int_env("SWTORSION_PROPERTY_CASES", 200),
        server_host=get_env("SWTORSION_SERVER_HOST", "127.0.0.1"),
        server_port=get_int_env("SWTORSION_SERVER_PORT", 8060),
    )
