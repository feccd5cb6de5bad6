from fractions import Fraction

import pytest

from codec import SCHEMAS, JsonCodec
from errors import InputValidationError
from lattice_core import DivisorClass, e, fiber_class, h_class, zero_class
from threefold import ThreefoldClass
from utils import format_rational, parse_rational


def test_rationals():
    assert format_rational(0) == "0"
    assert format_rational(Fraction(-4, 6)) == "-2/3"
    assert format_rational(7) == "7"
    assert parse_rational("-2/3") == Fraction(-2, 3)
    assert parse_rational(5) == 5
    for bad in (0.5, True, "1.5", "1e3", None):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_decode_divisor():
    x = JsonCodec.decode_divisor({"h": 3, "e": [-1] * 9})
    assert x == fiber_class()
    assert JsonCodec.encode_divisor(e(4)) == {"h": 0, "e": [0, 0, 0, 1, 0, 0, 0, 0, 0]}


@pytest.mark.parametrize("document, path", [
    ([1, 2], "$"),
    ({"e": [0] * 9}, "$.h"),
    ({"h": "1", "e": [0] * 9}, "$.h"),
    ({"h": 1, "e": [0] * 8}, "$.e"),
    ({"h": 1, "e": [0] * 8 + [True]}, "$.e[8]"),
])
def test_decode_divisor_reports_paths(document, path):
    with pytest.raises(InputValidationError) as info:
        JsonCodec.decode_divisor(document)
    assert info.value.path == path


def test_decode_word():
    assert JsonCodec.decode_word({"letters": [8, 0, 3]}).letters == (8, 0, 3)
    with pytest.raises(InputValidationError) as info:
        JsonCodec.decode_word({"letters": [1, 9]})
    assert info.value.path == "$.letters[1]"


def test_decode_permutation():
    assert JsonCodec.decode_permutation({"perm": [2, 1, 3, 4, 5, 6, 7, 8, 9]}) == (
        [2, 1, 3, 4, 5, 6, 7, 8, 9], "one-line")
    assert JsonCodec.decode_permutation({"perm": [1, 4], "notation": "cycle"}) == ([1, 4], "cycle")
    with pytest.raises(InputValidationError):
        JsonCodec.decode_permutation({"perm": [1, 1, 3, 4, 5, 6, 7, 8, 9]})
    with pytest.raises(InputValidationError) as info:
        JsonCodec.decode_permutation({"perm": [1, 2], "notation": "braid"})
    assert info.value.path == "$.notation"


def test_decode_coords_infers_coset():
    t = JsonCodec.decode_coords({"a": ["-1/3"] * 8})
    assert t.coset == 1
    assert JsonCodec.encode_coords(t) == {"a": ["-1/3"] * 8, "coset": 1}
    assert JsonCodec.decode_coords({"a": [0, 1, 0, 0, 0, 0, 0, "-2"], "coset": 0}).a[7] == -2


def test_decode_coords_rejects_mismatched_coset():
    with pytest.raises(InputValidationError) as info:
        JsonCodec.decode_coords({"a": ["0"] * 8, "coset": 2})
    assert info.value.path == "$.coset"
    with pytest.raises(InputValidationError) as info:
        JsonCodec.decode_coords({"a": ["0"] * 7 + [0.5]}, path="$.t")
    assert info.value.path == "$.t.a[7]"


def test_decode_cone():
    cone = JsonCodec.decode_cone({"rays": [["2", "0"], [1, 1], ["1/2", "1/2"]]})
    assert cone.dimension == 2
    assert set(cone.rays) == {(1, 0), (1, 1)}
    encoded = JsonCodec.encode_cone(cone)
    assert encoded["dimension"] == 2
    assert sorted(encoded["rays"]) == [["1", "0"], ["1", "1"]]


def test_decode_cone_with_lines():
    cone = JsonCodec.decode_cone({"rays": [[0, 1]], "lines": [[-2, 0]]})
    assert cone.lines == ((1, 0),)
    assert JsonCodec.encode_cone(cone)["lines"] == [["1", "0"]]


def test_decode_cone_errors():
    with pytest.raises(InputValidationError) as info:
        JsonCodec.decode_cone({"rays": []})
    assert info.value.path == "$.dimension"
    with pytest.raises(InputValidationError) as info:
        JsonCodec.decode_cone({"rays": [[1, 0], [1, 0, 0]]})
    assert info.value.path == "$.rays[1]"


def test_threefold_encoding_uses_canonical_gauge():
    f = fiber_class()
    A = ThreefoldClass(f, zero_class())
    B = ThreefoldClass(zero_class(), f)
    assert JsonCodec.encode_threefold(A) == JsonCodec.encode_threefold(B)
    encoded = JsonCodec.encode_threefold(ThreefoldClass(h_class(), e(9)))
    assert encoded["A2"]["e"][8] == 0
    assert JsonCodec.decode_threefold(encoded) == ThreefoldClass(h_class(), e(9))


def test_decode_threefold_paths():
    with pytest.raises(InputValidationError) as info:
        JsonCodec.decode_threefold({"A1": {"h": 0, "e": [0] * 9}, "A2": {"h": 0}})
    assert info.value.path == "$.A2.e"


def test_schemas_cover_every_type():
    assert set(SCHEMAS) == {"DivisorClass", "WeylWord", "Permutation", "SectionCoords", "RationalCone",
                            "ThreefoldClass"}
    assert SCHEMAS["DivisorClass"]["properties"]["e"]["minItems"] == 9


def test_divisor_equality_after_decode():
    assert JsonCodec.decode_divisor(JsonCodec.encode_divisor(DivisorClass(2, (1,) * 9))) == DivisorClass(2, (1,) * 9)


def test_decode_word_data():
    identity = list(range(1, 10))
    data = JsonCodec.decode_word_data({"permutations": [identity], "translation_index": 5})
    assert data == {"permutations": [identity], "reflection_root": 0, "translation_index": 5}


@pytest.mark.parametrize("document, path", [
    ([1, 2], "$"),
    ({}, "$.permutations"),
    ({"permutations": 3}, "$.permutations"),
    ({"permutations": []}, "$.permutations"),
    ({"permutations": [[1, 2, 3]]}, "$.permutations[0]"),
    ({"permutations": [[1] * 9]}, "$.permutations[0]"),
    ({"permutations": [list(range(1, 10)), "x"]}, "$.permutations[1]"),
    ({"permutations": [list(range(1, 10))], "reflection_root": 9}, "$.reflection_root"),
    ({"permutations": [list(range(1, 10))], "translation_index": 0}, "$.translation_index"),
])
def test_decode_word_data_reports_paths(document, path):
    with pytest.raises(InputValidationError) as info:
        JsonCodec.decode_word_data(document)
    assert info.value.path == path


def test_decode_census_options():
    assert JsonCodec.decode_census_options(None, 2) == 2
    assert JsonCodec.decode_census_options({}, 2) == 2
    assert JsonCodec.decode_census_options({"bound": 0}, 2) == 0
    for document, path in (([1, 2], "$"), ({"bound": -1}, "$.bound"), ({"bound": True}, "$.bound")):
        with pytest.raises(InputValidationError) as info:
            JsonCodec.decode_census_options(document, 2)
        assert info.value.path == path


def test_decode_cone_rejects_non_arrays():
    for document, path in (({"rays": 5}, "$.rays"), ({"rays": [5]}, "$.rays[0]"),
                           ({"rays": [[1, 0]], "lines": {}}, "$.lines"),
                           ({"rays": [[1, 0]], "lines": [[1]]}, "$.lines[0]"),
                           ({"rays": [[1, 0]], "dimension": 0}, "$.dimension")):
        with pytest.raises(InputValidationError) as info:
            JsonCodec.decode_cone(document)
        assert info.value.path == path
