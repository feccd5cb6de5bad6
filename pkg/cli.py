import argparse
import json
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, TextIO, Tuple

import config
from errors import InputValidationError, KconeError
from surface_handlers import (chamber_command, dual_command, lemma24_command, manin_command, member_command,
                              nef_surface_command, pair_command, reduce_command, reduce_domain_command,
                              reflect_command, verify_thm22_command, word_command)
from threefold_handlers import census_command, emit_fixtures_command, nef_threefold_command, schemas_command
from utils import dump_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_INVALID_INPUT = 2

Handler = Callable[[Any, argparse.Namespace], Dict]

# name -> (handler, input required, help)
COMMANDS: Dict[str, Tuple[Handler, bool, str]] = {}


def register_command(name: str, handler: Handler, needs_input: bool, help_text: str):
    COMMANDS[name] = (handler, needs_input, help_text)


def register_all_commands():
    """Register every command handler"""

    # ===== SURFACE =====
    register_command("pair", pair_command, True, "Intersection pairing of two classes")
    register_command("reflect", reflect_command, True, "Reflect a class in a simple root or a (-2)-class")
    register_command("reduce", reduce_command, True, "Reduce a class into the closed fundamental chamber")
    register_command("manin", manin_command, True, "Section class from coordinates, or coordinates from a class")
    register_command("word", word_command, True, "Weyl word of a translation or of a permutation")
    register_command("verify-thm22", verify_thm22_command, False, "Check the printed word for t2")
    register_command("lemma24", lemma24_command, True, "Root-basis coefficients of sigma - e1")
    register_command("nef-surface", nef_surface_command, True, "Nef test on the surface")
    register_command("dual", dual_command, True, "Dual of a rational cone")
    register_command("member", member_command, True, "Cone membership with a certificate")
    register_command("chamber", chamber_command, False, "Nef cone inside the fundamental chamber")
    register_command("reduce-domain", reduce_domain_command, True,
                     "Translate a surface or threefold class into the fundamental domain")

    # ===== THREEFOLD =====
    register_command("nef-threefold", nef_threefold_command, True, "Nef test on the fiber product")
    register_command("census", census_command, False, "Orbit census of nef cone edges")

    # ===== REPOSITORY =====
    register_command("schemas", schemas_command, False, "Print the JSON schemas")
    register_command("emit-fixtures", emit_fixtures_command, False, "Write fixtures and golden outputs")

    logger.debug(f"Registered {len(COMMANDS)} commands")


def create_parser() -> argparse.ArgumentParser:
    if not COMMANDS:
        register_all_commands()
    parser = argparse.ArgumentParser(prog="kcone", description="Nef cones of rational elliptic surfaces "
                                                               "and their fiber products")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--input", default=None, help="JSON input file, '-' for standard input")
    parser.add_argument("--max-steps", type=int, default=None, help="Reduction cap (KCONE_MAX_STEPS)")
    parser.add_argument("--bound", type=int, default=None, help="Census bound (KCONE_BOUND)")
    parser.add_argument("--format", choices=["json"], default="json")
    parser.add_argument("--config", default=None, help="dotenv file overriding the environment")
    return parser


def read_input(source: Optional[str], needs_input: bool, stdin: TextIO) -> Any:
    if source is None and not needs_input:
        return None
    if source is None or source == "-":
        text = stdin.read()
    else:
        try:
            with open(source, encoding="utf-8") as handle:
                text = handle.read()
        except OSError as e:
            raise InputValidationError("--input", f"cannot read {source}: {e.strerror}")
    if not text.strip():
        if needs_input:
            raise InputValidationError("$", "empty input")
        return None
    return json.loads(text)


def error_handler(error: Exception) -> Tuple[int, Dict]:
    """Map an exception to (exit code, error document)"""
    if isinstance(error, InputValidationError):
        logger.warning(f"Invalid input: {error.message}")
        return EXIT_INVALID_INPUT, {"error": error.code, "path": error.path, "message": error.message}
    if isinstance(error, json.JSONDecodeError):
        logger.warning(f"Malformed JSON: {error}")
        return EXIT_INVALID_INPUT, {"error": "INVALID_INPUT", "path": "$", "message": str(error)}
    if isinstance(error, KconeError):
        logger.error(f"Command failed: {error.code}: {error.message}")
        return EXIT_DOMAIN_ERROR, {"error": error.code, "message": error.message}
    raise error


def run(argv: List[str], stdout: Optional[TextIO] = None, stdin: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    stdin = stdin or sys.stdin
    options = create_parser().parse_args(argv)
    if options.config:
        config.load_config_file(options.config)
    config.validate_environment()
    logging.getLogger().setLevel(config.get_log_level())

    handler, needs_input, _ = COMMANDS[options.command]
    try:
        if options.max_steps is not None and options.max_steps < 1:
            raise InputValidationError("--max-steps", "must be >= 1")
        if options.bound is not None and options.bound < 0:
            raise InputValidationError("--bound", "must be >= 0")
        document = read_input(options.input, needs_input, stdin)
        result = handler(document, options)
        code = EXIT_OK
    except (KconeError, json.JSONDecodeError) as e:
        code, result = error_handler(e)

    stdout.write(dump_json(result) + "\n")
    return code
