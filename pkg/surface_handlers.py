import logging
from argparse import Namespace
from typing import Any, Dict

from codec import JsonCodec
from cones import (RationalCone, cone_member, dual_cone, lemma24_coefficients, lemma24_reconstruction,
                   min_over_sections, nef_chamber_polytope, reduce_mod_translations, surface_nef_test,
                   two_d_plus_s)
from errors import InputValidationError
from lattice_core import GRAM, fiber_class, pair
from mordell_weil import (class_to_coords, coords_of_e, manin_aux, manin_class, translation_as_weyl_word,
                          verify_paper_word)
from threefold_handlers import reduce_threefold_command
from utils import log_request, log_result
from weyl import bourbaki_reduce, chamber_position, permutation_word, reflect, root_class, simple_roots

logger = logging.getLogger(__name__)

# ===== LATTICE AND WEYL COMMANDS =====

def pair_command(document: Any, options: Namespace) -> Dict:
    """{"x": DivisorClass, "y": DivisorClass} -> {"value"}"""
    log_request("pair", document)
    JsonCodec.require_object(document, "$", ("x", "y"))
    x = JsonCodec.decode_divisor(document["x"], "$.x")
    y = JsonCodec.decode_divisor(document["y"], "$.y")
    result = {"value": JsonCodec.encode_rational(pair(x, y))}
    log_result(result, "PAIR")
    return result


def reflect_command(document: Any, options: Namespace) -> Dict:
    """{"x": DivisorClass, "root": index 0..8 or DivisorClass} -> {"result"}"""
    log_request("reflect", document)
    JsonCodec.require_object(document, "$", ("x", "root"))
    x = JsonCodec.decode_divisor(document["x"], "$.x")
    root = document["root"]
    if isinstance(root, int) and not isinstance(root, bool):
        if not 0 <= root <= 8:
            raise InputValidationError("$.root", f"root index {root} outside 0..8")
        alpha = root_class(root)
    else:
        alpha = JsonCodec.decode_divisor(root, "$.root")
    result = {"result": JsonCodec.encode_divisor(reflect(x, alpha))}
    log_result(result, "REFLECT")
    return result


def reduce_command(document: Any, options: Namespace) -> Dict:
    """DivisorClass -> {"word", "result", "position"} with result = word(x) in the closed chamber"""
    log_request("reduce", document)
    x = JsonCodec.decode_divisor(document)
    w, y = bourbaki_reduce(x, max_steps=options.max_steps)
    result = {"word": JsonCodec.encode_word(w), "result": JsonCodec.encode_divisor(y),
              "position": chamber_position(y).value}
    log_result(result, "REDUCE")
    return result

# ===== MORDELL-WEIL COMMANDS =====

def manin_command(document: Any, options: Namespace) -> Dict:
    """SectionCoords -> section class, or {"class": DivisorClass} -> SectionCoords"""
    log_request("manin", document)
    if isinstance(document, dict) and "class" in document:
        sigma = JsonCodec.decode_divisor(document["class"], "$.class")
        result = {"coords": JsonCodec.encode_coords(class_to_coords(sigma))}
    else:
        t = JsonCodec.decode_coords(document)
        aux = manin_aux(t)
        result = {"class": JsonCodec.encode_divisor(manin_class(t)),
                  "d": JsonCodec.encode_rational(aux.d), "s": JsonCodec.encode_rational(aux.s)}
    log_result(result, "MANIN")
    return result


def word_command(document: Any, options: Namespace) -> Dict:
    """SectionCoords -> Weyl word of the translation; {"perm", "notation"} -> word of the permutation"""
    log_request("word", document)
    if isinstance(document, dict) and "perm" in document:
        perm, notation = JsonCodec.decode_permutation(document)
        w = permutation_word(perm, notation)
    else:
        w = translation_as_weyl_word(JsonCodec.decode_coords(document), max_steps=options.max_steps)
    result = {"word": JsonCodec.encode_word(w), "length": len(w)}
    log_result(result, "WORD")
    return result


def verify_thm22_command(document: Any, options: Namespace) -> Dict:
    """Optional input: the word data (defaults to the shipped fixture)"""
    log_request("verify-thm22", document)
    fixture = JsonCodec.decode_word_data(document) if document is not None else None
    verification = verify_paper_word(fixture)
    result = {
        "interpretation": verification.interpretation.value if verification.interpretation else None,
        "identity": verification.ok,
        "by_interpretation": verification.identity_by_interpretation,
    }
    log_result(result, "VERIFY THM22")
    return result


def lemma24_command(document: Any, options: Namespace) -> Dict:
    """SectionCoords -> coefficients of sigma - e1 on the root basis"""
    log_request("lemma24", document)
    t = JsonCodec.decode_coords(document)
    sigma = manin_class(t)
    expected = tuple(a - b for a, b in zip(sigma.to_vector(), (0, 1) + (0,) * 8))
    result = {
        "coefficients": JsonCodec.encode_vector(lemma24_coefficients(t)),
        "two_d_plus_s": JsonCodec.encode_rational(two_d_plus_s(t)),
        "reconstructs": lemma24_reconstruction(t) == expected,
    }
    log_result(result, "LEMMA24")
    return result

# ===== CONE COMMANDS =====

def nef_surface_command(document: Any, options: Namespace) -> Dict:
    """DivisorClass -> {"nef", "mu"}; mu is null when x.f <= 0"""
    log_request("nef-surface", document)
    x = JsonCodec.decode_divisor(document)
    result: Dict[str, Any] = {"nef": surface_nef_test(x), "mu": None}
    if pair(x, fiber_class()) > 0:
        minimum = min_over_sections(x)
        result["mu"] = JsonCodec.encode_rational(minimum.mu)
        result["minimizers"] = [JsonCodec.encode_coords(t) for t in minimum.minimizers]
    log_result(result, "NEF SURFACE")
    return result


def dual_command(document: Any, options: Namespace) -> Dict:
    """{"cone": RationalCone, "form": "standard" | "picard"} -> dual cone"""
    log_request("dual", document)
    JsonCodec.require_object(document, "$", ("cone",))
    cone = JsonCodec.decode_cone(document["cone"], "$.cone")
    form = document.get("form", "standard")
    if form not in ("standard", "picard"):
        raise InputValidationError("$.form", f"unknown form {form!r}")
    if form == "picard" and cone.dimension != len(GRAM):
        raise InputValidationError("$.cone.dimension", f"the Picard form needs dimension {len(GRAM)}")
    result = JsonCodec.encode_cone(dual_cone(cone, GRAM if form == "picard" else None))
    log_result(result, "DUAL")
    return result


def member_command(document: Any, options: Namespace) -> Dict:
    """{"x": vector, "cone": RationalCone} -> {"member", "coefficients" | "separator"}"""
    log_request("member", document)
    JsonCodec.require_object(document, "$", ("x", "cone"))
    cone = JsonCodec.decode_cone(document["cone"], "$.cone")
    x = JsonCodec.decode_vector(document["x"], "$.x")
    if len(x) != cone.dimension:
        raise InputValidationError("$.x", f"expected {cone.dimension} entries, got {len(x)}")
    membership = cone_member(x, cone)
    result: Dict[str, Any] = {"member": membership.member}
    if membership.member:
        result["coefficients"] = JsonCodec.encode_vector(membership.coefficients)
        result["generators"] = [JsonCodec.encode_vector(g) for g in cone.generators()]
    else:
        result["separator"] = JsonCodec.encode_vector(membership.separator)
    log_result(result, "MEMBER")
    return result


def chamber_command(document: Any, options: Namespace) -> Dict:
    """Nef cone inside the closed fundamental chamber"""
    log_request("chamber", document)
    result = JsonCodec.encode_cone(nef_chamber_polytope())
    log_result(result, "CHAMBER")
    return result


def reduce_domain_command(document: Any, options: Namespace) -> Dict:
    """DivisorClass -> translation into the fundamental domain (ThreefoldClass input is routed to the threefold)"""
    if isinstance(document, dict) and "A1" in document:
        return reduce_threefold_command(document, options)

    log_request("reduce-domain", document)
    x = JsonCodec.decode_divisor(document)
    reduction = reduce_mod_translations(x, options.max_steps)
    result = {"t": JsonCodec.encode_coords(reduction.t), "word": JsonCodec.encode_word(reduction.w_prime),
              "y": JsonCodec.encode_divisor(reduction.y),
              "chamber_point": JsonCodec.encode_divisor(reduction.chamber_point)}
    log_result(result, "REDUCE DOMAIN")
    return result

# ===== GOLDEN OUTPUTS =====

def golden_outputs(fixture_manager) -> Dict[str, Dict]:
    """Documents written by emit-fixtures and checked by the regression suite"""
    options = Namespace(max_steps=None, bound=None)
    # Generators kept in root index order so the certificate reads (3; 2, 4, 6, 5, 4, 3, 2, 1)
    roots = RationalCone(rays=tuple(tuple(r.cls.to_vector()) for r in simple_roots()), dimension=len(GRAM))
    certificate = cone_member(fiber_class().to_vector(), roots)
    return {
        "lemma24_e2.json": lemma24_command(JsonCodec.encode_coords(coords_of_e(2)), options),
        "f_in_cone_B.json": {"member": certificate.member,
                             "coefficients": JsonCodec.encode_vector(certificate.coefficients)},
        "verify_thm22.json": verify_thm22_command(fixture_manager.thm22_word(), options),
        "nef_surface_h.json": nef_surface_command({"h": 1, "e": [0] * 9}, options),
    }
