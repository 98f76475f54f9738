import os
from dataclasses import dataclass, replace

from dotenv import load_dotenv

from utils.logging_config import setup_logging, get_logger

# Pick up ODDFORM_* overrides from a local .env file if present
load_dotenv()

setup_logging()
logger = get_logger(__name__)


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default

    try:
        return int(raw)

    except ValueError:
        logger.warning(f"⚠️ Ignoring non-integer {name}={raw!r}, using {default}")
        return default


# =========================
#        SETTINGS
# =========================
@dataclass(frozen=True, kw_only=True)
class Settings:
    """Resource caps and sampling defaults shared by every command"""

    ring_cap: int = 65536
    enumeration_cap: int = 4096
    closure_cap: int = 200000
    samples: int = 10000
    seed: int = 37

    def with_overrides(self, **overrides) -> "Settings":
        """Copy with the given non-None fields replaced"""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def load_settings() -> Settings:
    return Settings(
        ring_cap=_env_int("ODDFORM_RING_CAP", 65536),
        enumeration_cap=_env_int("ODDFORM_ENUM_CAP", 4096),
        closure_cap=_env_int("ODDFORM_CLOSURE_CAP", 200000),
        samples=_env_int("ODDFORM_SAMPLES", 10000),
        seed=_env_int("ODDFORM_SEED", 37),
    )


# Global settings instance
SETTINGS = load_settings()
