import json
import logging
from fractions import Fraction
from typing import Any, Dict, Iterable, List

logger = logging.getLogger(__name__)

# ===== LOGGING UTILITIES =====

def log_request(command: str, document: Any, description: str = ""):
    """Log the command name and its decoded input document"""
    try:
        logger.info(f"=== {description or command} REQUEST LOG ===")
        logger.info(f"Command: {command}")
        logger.info(f"Input: {json.dumps(document, sort_keys=True, default=str)}")
        logger.info(f"=== END REQUEST LOG ===")
    except Exception as e:
        logger.error(f"Error logging request: {e}")


def log_result(result: Dict, description: str = ""):
    """Log the JSON result about to be written"""
    try:
        logger.info(f"=== {description} RESULT LOG ===")
        logger.info(f"Result: {json.dumps(result, indent=2, sort_keys=True, default=str)}")
        logger.info(f"=== END RESULT LOG ===")
    except Exception as e:
        logger.error(f"Error logging result: {e}")

# ===== RATIONAL FORMATTING =====

def format_rational(value) -> str:
    """Fraction as p/q, integers written without a denominator"""
    return str(Fraction(value))


def parse_rational(text) -> Fraction:
    """Accept "p/q", "p" or a JSON integer; floats are rejected so exactness is never lost"""
    if isinstance(text, bool) or isinstance(text, float):
        raise ValueError(f"not an exact rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational string: {text!r}")
    if "." in text or "e" in text.lower():
        raise ValueError(f"decimal notation is not accepted: {text!r}")
    return Fraction(text.strip())


def format_vector(values: Iterable) -> List[str]:
    return [format_rational(v) for v in values]

# ===== OUTPUT =====

def dump_json(document: Any) -> str:
    """Deterministic serialization: sorted keys, fixed separators"""
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False)
