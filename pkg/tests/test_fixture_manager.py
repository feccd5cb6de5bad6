import json

import pytest

from fixture_manager import FixtureManager

PRINTED_PERMUTATIONS_COUNT = 6


@pytest.fixture
def emitted(tmp_path):
    manager = FixtureManager()
    written = manager.emit_fixtures(str(tmp_path))
    return FixtureManager(str(tmp_path)), written


def test_shipped_word_data():
    data = FixtureManager().thm22_word()
    assert len(data["permutations"]) == PRINTED_PERMUTATIONS_COUNT
    assert data["reflection_root"] == 0
    assert data["translation_index"] == 2


def test_loads_are_cached():
    manager = FixtureManager()
    assert manager.thm22_word() is manager.thm22_word()


def test_missing_fixture(tmp_path):
    with pytest.raises(OSError):
        FixtureManager(str(tmp_path)).load("absent.json")


def test_rejects_malformed_word_data(tmp_path):
    (tmp_path / "thm22_word.json").write_text(json.dumps({"permutations": [[1, 2, 3]]}))
    with pytest.raises(ValueError):
        FixtureManager(str(tmp_path)).thm22_word()


def test_emit_writes_every_file(emitted):
    _, written = emitted
    assert sorted(written) == ["golden/f_in_cone_B.json", "golden/lemma24_e2.json", "golden/nef_surface_h.json",
                               "golden/verify_thm22.json", "thm22_word.json"]


def test_golden_exception_case(emitted):
    manager, _ = emitted
    golden = manager.golden("lemma24_e2.json")
    assert golden["coefficients"][1] == "-1"
    assert golden["coefficients"][0] == "0"


def test_golden_fiber_certificate(emitted):
    manager, _ = emitted
    golden = manager.golden("f_in_cone_B.json")
    assert golden["member"] is True
    assert golden["coefficients"] == ["3", "2", "4", "6", "5", "4", "3", "2", "1"]


def test_golden_word_and_nef(emitted):
    manager, _ = emitted
    assert manager.golden("verify_thm22.json")["interpretation"] == "ONE_LINE"
    assert manager.golden("nef_surface_h.json")["mu"] == "0"


def test_emitted_word_data_matches_shipped(emitted):
    manager, _ = emitted
    assert manager.thm22_word() == FixtureManager().thm22_word()
