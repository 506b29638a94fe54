"""
Runtime settings and the exception hierarchy shared by every cohom_* module.

Settings are read from the environment (a local `.env` is honoured through
python-dotenv) and validated with pydantic. CLI flags override them.
"""
import os
import time
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator


# Configuration
CACHE_DIR = Path.home() / ".cache" / "supercohom"
DEFAULT_PRIME = 2**31 - 1
DEFAULT_WINDOW = 12


class SuperCohomError(Exception):
    """Base class for all errors raised by the engine."""


class AlgebraError(SuperCohomError, ValueError):
    """Bad algebra parameters, descriptors or basis indices."""


class ModuleError(SuperCohomError, ValueError):
    """Bad weights, non-invariant subspaces or broken representations."""


class LinalgError(SuperCohomError, ValueError):
    """Dimension mismatch in a linear-algebra call."""


class CochainError(SuperCohomError, ValueError):
    """Cochain degree out of range, or a cocycle test failed on input."""


class DescriptorError(SuperCohomError, ValueError):
    """A CLI/cache descriptor string could not be parsed."""


class BudgetExceeded(SuperCohomError):
    """A computation ran past its resource budget."""


def _env_bool(name: str, default: bool) -> bool:
    raw = os.environ.get(name)
    if raw is None:
        return default
    return raw.strip().lower() not in {"0", "false", "no", "off", ""}


class Settings(BaseModel):
    cache_dir: Path = CACHE_DIR
    modular_prepass: bool = True
    prime: int = DEFAULT_PRIME
    budget_minutes: Optional[float] = None
    jobs: int = Field(default=1, ge=1)
    log_level: str = "INFO"
    window: int = Field(default=DEFAULT_WINDOW, ge=1)

    @field_validator("log_level")
    @classmethod
    def _upper_level(cls, value: str) -> str:
        return value.upper()

    @classmethod
    def from_env(cls) -> "Settings":
        """Build settings from SUPERCOHOM_* environment variables."""
        load_dotenv()
        values = {
            "cache_dir": Path(os.environ.get("SUPERCOHOM_CACHE", str(CACHE_DIR))).expanduser(),
            "modular_prepass": _env_bool("SUPERCOHOM_MODULAR_PREPASS", True),
            "prime": int(os.environ.get("SUPERCOHOM_PRIME", DEFAULT_PRIME)),
            "jobs": int(os.environ.get("SUPERCOHOM_JOBS", 1)),
            "log_level": os.environ.get("SUPERCOHOM_LOG_LEVEL", "INFO"),
            "window": int(os.environ.get("SUPERCOHOM_WINDOW", DEFAULT_WINDOW)),
        }
        budget = os.environ.get("SUPERCOHOM_BUDGET_MINUTES")
        if budget:
            values["budget_minutes"] = float(budget)
        return cls(**values)


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Process-wide settings, loaded lazily on first use."""
    global _settings
    if _settings is None:
        _settings = Settings.from_env()
    return _settings


def set_modular_prepass(enabled: bool) -> None:
    """Toggle the modular rank prepass (audit runs switch it off)."""
    get_settings().modular_prepass = enabled


class Budget:
    """Wall-clock allowance checked between expensive steps."""

    def __init__(self, minutes: Optional[float] = None):
        self.minutes = minutes
        self.started = time.monotonic()
        self.deadline = self.started + minutes * 60 if minutes else None

    def elapsed(self) -> float:
        return time.monotonic() - self.started

    def expired(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline

    def check(self, stage: str = "") -> None:
        if self.expired():
            raise BudgetExceeded(f"budget of {self.minutes} min exhausted before {stage or 'next step'}")
