"""
Planner configuration: defaults, environment overrides and CLI overrides
"""

import logging
import os
from dataclasses import dataclass, fields, replace
from typing import Any, Dict, Optional

from .errors import ConfigError

logger = logging.getLogger(__name__)

# Default configuration
DEFAULTS: Dict[str, Any] = {
    "field": 2,
    "variant_cap": 64,
    "color_budget": 10**7,
    "budget": 10**8,
    "workers": 1,
    "log_level": "INFO",
}

ENV_VARS = {
    "field": "RTTPLAN_FIELD",
    "variant_cap": "RTTPLAN_VARIANT_CAP",
    "color_budget": "RTTPLAN_COLOR_BUDGET",
    "budget": "RTTPLAN_BUDGET",
    "workers": "RTTPLAN_WORKERS",
    "log_level": "RTTPLAN_LOG_LEVEL",
}


@dataclass(frozen=True)
class PlannerConfig:
    field: int = DEFAULTS["field"]
    variant_cap: int = DEFAULTS["variant_cap"]
    color_budget: int = DEFAULTS["color_budget"]
    budget: int = DEFAULTS["budget"]
    workers: int = DEFAULTS["workers"]
    log_level: str = DEFAULTS["log_level"]

    def __post_init__(self):
        for name in ("variant_cap", "color_budget", "budget", "workers"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.field < 2:
            raise ConfigError(f"field must be a prime >= 2, got {self.field}")
        if logging.getLevelName(self.log_level.upper()) == f"Level {self.log_level.upper()}":
            raise ConfigError(f"unknown log level: {self.log_level}")

    @classmethod
    def from_env(cls, environ: Optional[Dict[str, str]] = None) -> "PlannerConfig":
        """Build a config from defaults overlaid with RTTPLAN_* variables"""
        environ = os.environ if environ is None else environ
        values: Dict[str, Any] = {}
        for f in fields(cls):
            raw = environ.get(ENV_VARS[f.name])
            if raw is None or raw.strip() == "":
                continue
            if f.name == "log_level":
                values[f.name] = raw.strip().upper()
                continue
            try:
                values[f.name] = int(raw)
            except ValueError:
                raise ConfigError(f"{ENV_VARS[f.name]} must be an integer, got {raw!r}") from None
        if values:
            logger.debug(f"Config from environment: {values}")
        return cls(**values)

    def with_overrides(self, **overrides: Any) -> "PlannerConfig":
        """Apply non-None overrides (CLI flags win over the environment)"""
        changes = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **changes) if changes else self
