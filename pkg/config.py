import os
import logging
from typing import Dict, List, Optional

from dotenv import dotenv_values

logger = logging.getLogger(__name__)

DEFAULT_MAX_STEPS = 10_000
DEFAULT_BOUND = 2
DEFAULT_ORBIT_CAP = 100_000
DEFAULT_PROBE_WEIGHTS = [10, 9, 8, 7, 6, 5, 4, 3, 2]

_overrides: Dict[str, str] = {}


def load_config_file(path: str):
    """Load a dotenv-style config file; its values take precedence over the environment"""
    values = dotenv_values(path)
    _overrides.update({k: v for k, v in values.items() if v is not None})
    logger.info(f"Loaded {len(values)} settings from {path}")


def _get(name: str) -> Optional[str]:
    if name in _overrides:
        return _overrides[name]
    return os.getenv(name)


def _get_int(name: str, default: int) -> int:
    raw = _get(name)
    if raw is None or raw == "":
        return default
    return int(raw)


def get_max_steps() -> int:
    """Reduction cap (KCONE_MAX_STEPS)"""
    return _get_int("KCONE_MAX_STEPS", DEFAULT_MAX_STEPS)


def get_bound() -> int:
    return _get_int("KCONE_BOUND", DEFAULT_BOUND)


def get_orbit_cap() -> int:
    return _get_int("KCONE_ORBIT_CAP", DEFAULT_ORBIT_CAP)


def get_probe_weights() -> List[int]:
    raw = _get("KCONE_PROBE_WEIGHTS")
    if not raw:
        return list(DEFAULT_PROBE_WEIGHTS)
    return [int(part) for part in raw.split(",")]


def get_log_level() -> str:
    return (_get("KCONE_LOG_LEVEL") or "WARNING").upper()


def get_fixture_dir() -> str:
    default = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")
    return _get("KCONE_FIXTURE_DIR") or default


def validate_environment():
    """Validate settings; raise RuntimeError naming every bad variable"""
    problems = []

    for var, minimum in (("KCONE_MAX_STEPS", 1), ("KCONE_BOUND", 0), ("KCONE_ORBIT_CAP", 1)):
        raw = _get(var)
        if raw is None or raw == "":
            continue
        try:
            if int(raw) < minimum:
                problems.append(f"  {var}: must be >= {minimum}, got {raw}")
        except ValueError:
            problems.append(f"  {var}: not an integer: {raw!r}")

    raw = _get("KCONE_PROBE_WEIGHTS")
    if raw:
        try:
            weights = [int(part) for part in raw.split(",")]
            if len(weights) != 9 or min(weights) <= 0:
                problems.append("  KCONE_PROBE_WEIGHTS: need 9 positive integers")
        except ValueError:
            problems.append(f"  KCONE_PROBE_WEIGHTS: not a list of integers: {raw!r}")

    if get_log_level() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        problems.append(f"  KCONE_LOG_LEVEL: unknown level {get_log_level()}")

    if problems:
        error_msg = "Invalid configuration:\n" + "\n".join(problems)
        logger.error(error_msg)
        raise RuntimeError(error_msg)
