# core/config.py

"""
Runtime configuration: enumeration caps, porosity engine choice, cache size
and logging defaults. Values come from the environment (optionally via a
.env file) and can be overridden per call or from the command line.
"""

import os
import logging
from dataclasses import dataclass, replace
from enum import Enum
from threading import Lock
from typing import Optional
from dotenv import load_dotenv

# Ensure environment variables are loaded
load_dotenv()

logger = logging.getLogger(__name__)


class PorosityEngine(Enum):
    """Supported porosity engines."""
    ASSIGNMENT = "assignment"
    ENUMERATE = "enumerate"
    AUTO = "auto"  # enumerate below porosity_oracle_cap, assignment above


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={raw!r}, using {default}")
        return default


@dataclass(frozen=True)
class WidthConfig:
    """Caps and defaults shared by every module."""
    enumeration_cap: int = 28
    tight_cut_cap: int = 24
    tight_enum_cap: int = 14
    permutation_cap: int = 10
    oracle_cap: int = 8
    minor_search_cap: int = 10
    cyclic_oracle_cap: int = 8
    porosity_engine: PorosityEngine = PorosityEngine.ASSIGNMENT
    porosity_oracle_cap: int = 10
    cache_size: int = 4096
    log_level: str = "WARNING"
    log_dir: Optional[str] = None

    @classmethod
    def from_env(cls) -> "WidthConfig":
        engine = os.getenv("PMW_POROSITY_ENGINE", cls.porosity_engine.value).lower()
        try:
            porosity_engine = PorosityEngine(engine)
        except ValueError:
            logger.warning(f"Unknown porosity engine {engine!r}, using assignment")
            porosity_engine = PorosityEngine.ASSIGNMENT

        return cls(
            enumeration_cap=_env_int("PMW_ENUMERATION_CAP", cls.enumeration_cap),
            tight_cut_cap=_env_int("PMW_TIGHT_CUT_CAP", cls.tight_cut_cap),
            tight_enum_cap=_env_int("PMW_TIGHT_ENUM_CAP", cls.tight_enum_cap),
            permutation_cap=_env_int("PMW_PERMUTATION_CAP", cls.permutation_cap),
            oracle_cap=_env_int("PMW_ORACLE_CAP", cls.oracle_cap),
            minor_search_cap=_env_int("PMW_MINOR_SEARCH_CAP", cls.minor_search_cap),
            cyclic_oracle_cap=_env_int("PMW_CYCLIC_ORACLE_CAP", cls.cyclic_oracle_cap),
            porosity_engine=porosity_engine,
            porosity_oracle_cap=_env_int("PMW_POROSITY_ORACLE_CAP", cls.porosity_oracle_cap),
            cache_size=_env_int("PMW_CACHE_SIZE", cls.cache_size),
            log_level=os.getenv("PMW_LOG_LEVEL", cls.log_level).upper(),
            log_dir=os.getenv("PMW_LOG_DIR") or None,
        )

    def with_cap(self, cap: int) -> "WidthConfig":
        """Copy with every oracle cap set to `cap`."""
        return replace(
            self,
            permutation_cap=cap,
            oracle_cap=cap,
            minor_search_cap=cap,
            cyclic_oracle_cap=cap,
        )


_config_lock = Lock()
_config = WidthConfig.from_env()


def get_config() -> WidthConfig:
    return _config


def set_config(config: WidthConfig) -> WidthConfig:
    """Install a process-wide configuration and return the previous one."""
    global _config
    with _config_lock:
        previous = _config
        _config = config
    logger.debug(f"Configuration replaced: {config}")
    return previous


def resolve_cap(explicit: Optional[int], field_name: str) -> int:
    """An explicit cap wins over the configured one."""
    if explicit is not None:
        return explicit
    return getattr(_config, field_name)
