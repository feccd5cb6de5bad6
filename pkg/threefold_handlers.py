import logging
from argparse import Namespace
from typing import Any, Dict

import config
from fixture_manager import FixtureManager
from codec import SCHEMAS, JsonCodec
from threefold import edge_orbit_census, in_threefold_domain, picard_rank, threefold_nef_test, threefold_reduce
from utils import log_request, log_result

logger = logging.getLogger(__name__)

# ===== THREEFOLD COMMANDS =====

def nef_threefold_command(document: Any, options: Namespace) -> Dict:
    """ThreefoldClass -> {"nef", "interval", "witness", "non_unique"}"""
    log_request("nef-threefold", document)
    A = JsonCodec.decode_threefold(document)
    verdict = threefold_nef_test(A)
    result = {
        "nef": verdict.nef,
        "interval": list(verdict.interval) if verdict.interval else None,
        "witness": verdict.witness,
        "non_unique": verdict.non_unique,
        "class": JsonCodec.encode_threefold(A),
        "picard_rank": picard_rank(),
    }
    log_result(result, "NEF THREEFOLD")
    return result


def reduce_threefold_command(document: Any, options: Namespace) -> Dict:
    log_request("reduce-domain", document, "THREEFOLD REDUCE")
    A = JsonCodec.decode_threefold(document)
    reduction = threefold_reduce(A, options.max_steps)
    result = {
        "t1": JsonCodec.encode_coords(reduction.t1),
        "t2": JsonCodec.encode_coords(reduction.t2),
        "class": JsonCodec.encode_threefold(reduction.reduced),
        "witness": reduction.witness,
        "in_domain": in_threefold_domain(reduction.reduced),
    }
    log_result(result, "THREEFOLD REDUCE")
    return result


def census_command(document: Any, options: Namespace) -> Dict:
    """Optional input {"bound"}; --bound overrides, KCONE_BOUND is the default"""
    log_request("census", document)
    bound = JsonCodec.decode_census_options(document, config.get_bound())
    if options.bound is not None:
        bound = options.bound

    entries = edge_orbit_census(bound, options.max_steps)
    result = {
        "bound": bound,
        "count": len(entries),
        "representatives": [
            {"class": JsonCodec.encode_threefold(entry.representative), "ray": list(entry.ray),
             "factor": entry.factor, "hits": entry.hits}
            for entry in entries
        ],
    }
    logger.info(f"Census found {len(entries)} representatives")
    return result


# ===== REPOSITORY COMMANDS =====

def schemas_command(document: Any, options: Namespace) -> Dict:
    return {"schemas": SCHEMAS}


def emit_fixtures_command(document: Any, options: Namespace) -> Dict:
    """Optional input {"directory"}; defaults to KCONE_FIXTURE_DIR"""
    directory = None
    if document is not None:
        JsonCodec.require_object(document, "$", ())
        directory = document.get("directory")
    written = FixtureManager().emit_fixtures(directory)
    result = {"written": sorted(written)}
    log_result(result, "EMIT FIXTURES")
    return result
