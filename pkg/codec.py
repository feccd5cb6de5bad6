import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from cones import RationalCone, canonical_line
from errors import InputValidationError
from lattice_core import RANK, DivisorClass
from mordell_weil import SectionCoords, infer_coset
from threefold import ThreefoldClass
from utils import format_rational, format_vector, parse_rational
from weyl import WeylWord

logger = logging.getLogger(__name__)

RATIONAL_SCHEMA = {"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"}
DIVISOR_SCHEMA = {
    "type": "object",
    "required": ["h", "e"],
    "properties": {"h": {"type": "integer"},
                   "e": {"type": "array", "items": {"type": "integer"}, "minItems": 9, "maxItems": 9}},
}

SCHEMAS: Dict[str, Dict] = {
    "DivisorClass": DIVISOR_SCHEMA,
    "WeylWord": {
        "type": "object",
        "required": ["letters"],
        "properties": {"letters": {"type": "array", "items": {"type": "integer", "minimum": 0, "maximum": 8}}},
    },
    "Permutation": {
        "type": "object",
        "required": ["perm"],
        "properties": {"perm": {"type": "array", "items": {"type": "integer", "minimum": 1, "maximum": 9}},
                       "notation": {"enum": ["one-line", "cycle"]}},
    },
    "SectionCoords": {
        "type": "object",
        "required": ["a"],
        "properties": {"a": {"type": "array", "items": RATIONAL_SCHEMA, "minItems": 8, "maxItems": 8},
                       "coset": {"enum": [0, 1, 2]}},
    },
    "RationalCone": {
        "type": "object",
        "required": ["rays"],
        "properties": {"rays": {"type": "array", "items": {"type": "array", "items": RATIONAL_SCHEMA}},
                       "lines": {"type": "array", "items": {"type": "array", "items": RATIONAL_SCHEMA}},
                       "facets": {"type": "array", "items": {"type": "array", "items": RATIONAL_SCHEMA}},
                       "dimension": {"type": "integer", "minimum": 1}},
    },
    "ThreefoldClass": {
        "type": "object",
        "required": ["A1", "A2"],
        "properties": {"A1": DIVISOR_SCHEMA, "A2": DIVISOR_SCHEMA},
    },
}


class JsonCodec:
    """Stateless encode/decode/validate for every domain value crossing the CLI"""

    # ===== ENCODING =====

    @staticmethod
    def encode_divisor(x: DivisorClass) -> Dict:
        return {"h": x.coeff_h, "e": list(x.coeff_e)}

    @staticmethod
    def encode_word(w: WeylWord) -> Dict:
        return {"letters": list(w.letters)}

    @staticmethod
    def encode_coords(t: SectionCoords) -> Dict:
        return {"a": format_vector(t.a), "coset": t.coset}

    @staticmethod
    def encode_cone(c: RationalCone) -> Dict:
        document = {"rays": [format_vector(r) for r in c.rays],
                    "facets": [format_vector(u) for u in (c.facets or ())],
                    "dimension": c.dimension}
        if c.lines:
            document["lines"] = [format_vector(l) for l in c.lines]
        return document

    @staticmethod
    def encode_threefold(A: ThreefoldClass) -> Dict:
        canonical = A.canonical()
        return {"A1": JsonCodec.encode_divisor(canonical.A1), "A2": JsonCodec.encode_divisor(canonical.A2)}

    @staticmethod
    def encode_vector(values: Sequence) -> List[str]:
        return format_vector(values)

    @staticmethod
    def encode_rational(value) -> str:
        return format_rational(value)

    # ===== DECODING =====

    @staticmethod
    def decode_divisor(document: Any, path: str = "$") -> DivisorClass:
        JsonCodec.require_object(document, path, ("h", "e"))
        h = JsonCodec._integer(document["h"], f"{path}.h")
        e = JsonCodec._integer_list(document["e"], f"{path}.e", length=RANK - 1)
        return DivisorClass(h, tuple(e))

    @staticmethod
    def decode_word(document: Any, path: str = "$") -> WeylWord:
        JsonCodec.require_object(document, path, ("letters",))
        letters = JsonCodec._integer_list(document["letters"], f"{path}.letters")
        for i, letter in enumerate(letters):
            if not 0 <= letter <= 8:
                raise InputValidationError(f"{path}.letters[{i}]", f"letter {letter} outside 0..8")
        return WeylWord(tuple(letters))

    @staticmethod
    def decode_permutation(document: Any, path: str = "$") -> Tuple[List[int], str]:
        JsonCodec.require_object(document, path, ("perm",))
        perm = JsonCodec._integer_list(document["perm"], f"{path}.perm")
        notation = document.get("notation", "one-line")
        if notation not in ("one-line", "cycle"):
            raise InputValidationError(f"{path}.notation", f"unknown notation {notation!r}")
        if notation == "one-line" and sorted(perm) != list(range(1, 10)):
            raise InputValidationError(f"{path}.perm", "one-line notation needs a permutation of 1..9")
        if notation == "cycle" and (len(set(perm)) != len(perm) or any(not 1 <= p <= 9 for p in perm)):
            raise InputValidationError(f"{path}.perm", "a cycle needs distinct entries in 1..9")
        return perm, notation

    @staticmethod
    def decode_coords(document: Any, path: str = "$") -> SectionCoords:
        """Section coordinates; the coset is inferred when absent and checked when present"""
        JsonCodec.require_object(document, path, ("a",))
        a = JsonCodec._rational_list(document["a"], f"{path}.a", length=8)
        inferred = infer_coset(a)
        coset: Optional[int] = document.get("coset")
        if coset is not None and coset != inferred:
            raise InputValidationError(f"{path}.coset", f"coset {coset} does not match coordinates (coset {inferred})")
        return SectionCoords(tuple(a), inferred)

    @staticmethod
    def decode_cone(document: Any, path: str = "$") -> RationalCone:
        JsonCodec.require_object(document, path, ("rays",))
        rays = [JsonCodec._rational_list(r, f"{path}.rays[{i}]")
                for i, r in enumerate(JsonCodec._array(document["rays"], f"{path}.rays"))]
        lines = [JsonCodec._rational_list(l, f"{path}.lines[{i}]")
                 for i, l in enumerate(JsonCodec._array(document.get("lines", []), f"{path}.lines"))]
        dimension = document.get("dimension")
        vectors = rays + lines
        if dimension is None:
            if not vectors:
                raise InputValidationError(f"{path}.dimension", "required when the cone has no generators")
            dimension = len(vectors[0])
        dimension = JsonCodec._integer(dimension, f"{path}.dimension")
        if dimension < 1:
            raise InputValidationError(f"{path}.dimension", f"expected a positive integer, got {dimension}")
        for name, group in (("rays", rays), ("lines", lines)):
            for i, v in enumerate(group):
                if len(v) != dimension:
                    raise InputValidationError(f"{path}.{name}[{i}]", f"expected {dimension} entries, got {len(v)}")
        cone = RationalCone.from_generators(rays, dimension)
        if lines:
            cone = RationalCone(rays=cone.rays, lines=tuple(sorted({canonical_line(l) for l in lines if any(l)})),
                                dimension=dimension)
        return cone

    @staticmethod
    def decode_word_data(document: Any, path: str = "$") -> Dict:
        """Word data: permutations of 1..9 (P1 first), optional reflection root and translation index"""
        JsonCodec.require_object(document, path, ("permutations",))
        permutations = JsonCodec._array(document["permutations"], f"{path}.permutations")
        if not permutations:
            raise InputValidationError(f"{path}.permutations", "expected at least one permutation")
        decoded = []
        for i, perm in enumerate(permutations):
            values = JsonCodec._integer_list(perm, f"{path}.permutations[{i}]", length=9)
            if sorted(values) != list(range(1, 10)):
                raise InputValidationError(f"{path}.permutations[{i}]", "expected a permutation of 1..9")
            decoded.append(values)
        reflection_root = JsonCodec._integer(document.get("reflection_root", 0), f"{path}.reflection_root")
        if not 0 <= reflection_root < RANK - 1:
            raise InputValidationError(f"{path}.reflection_root", f"root index out of range: {reflection_root}")
        translation_index = JsonCodec._integer(document.get("translation_index", 2), f"{path}.translation_index")
        if not 1 <= translation_index <= 9:
            raise InputValidationError(f"{path}.translation_index", f"exceptional index out of range: {translation_index}")
        return {"permutations": decoded, "reflection_root": reflection_root, "translation_index": translation_index}

    @staticmethod
    def decode_census_options(document: Any, default_bound: int, path: str = "$") -> int:
        """Optional {"bound"}; returns the census bound"""
        if document is None:
            return default_bound
        JsonCodec.require_object(document, path, ())
        bound = JsonCodec._integer(document.get("bound", default_bound), f"{path}.bound")
        if bound < 0:
            raise InputValidationError(f"{path}.bound", f"expected a nonnegative integer, got {bound}")
        return bound

    @staticmethod
    def decode_threefold(document: Any, path: str = "$") -> ThreefoldClass:
        JsonCodec.require_object(document, path, ("A1", "A2"))
        return ThreefoldClass(JsonCodec.decode_divisor(document["A1"], f"{path}.A1"),
                              JsonCodec.decode_divisor(document["A2"], f"{path}.A2"))

    @staticmethod
    def decode_vector(document: Any, path: str = "$") -> List[Fraction]:
        return JsonCodec._rational_list(document, path)

    # ===== VALIDATION HELPERS =====

    @staticmethod
    def require_object(document: Any, path: str, keys: Sequence[str]):
        if not isinstance(document, dict):
            raise InputValidationError(path, f"expected an object, got {type(document).__name__}")
        for key in keys:
            if key not in document:
                raise InputValidationError(f"{path}.{key}", "missing required field")

    @staticmethod
    def _integer(value: Any, path: str) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise InputValidationError(path, f"expected an integer, got {value!r}")
        return value

    @staticmethod
    def _array(value: Any, path: str) -> List:
        if not isinstance(value, list):
            raise InputValidationError(path, "expected an array")
        return value

    @staticmethod
    def _integer_list(value: Any, path: str, length: Optional[int] = None) -> List[int]:
        JsonCodec._array(value, path)
        if length is not None and len(value) != length:
            raise InputValidationError(path, f"expected {length} entries, got {len(value)}")
        return [JsonCodec._integer(v, f"{path}[{i}]") for i, v in enumerate(value)]

    @staticmethod
    def _rational_list(value: Any, path: str, length: Optional[int] = None) -> List[Fraction]:
        JsonCodec._array(value, path)
        if length is not None and len(value) != length:
            raise InputValidationError(path, f"expected {length} entries, got {len(value)}")
        result = []
        for i, v in enumerate(value):
            try:
                result.append(parse_rational(v))
            except (ValueError, ZeroDivisionError) as e:
                raise InputValidationError(f"{path}[{i}]", str(e))
        return result
