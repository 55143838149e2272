import pytest

import shukla


def test_motivating_example_dimensions():
    rep = shukla.cohomology("dual_numbers", "quotient_k", "trivial_module")
    assert rep["h"] == [1, 0, 1, 1, 1]
    assert rep["relative_h"] == [1, 0, 0, 0, 0]
    assert rep["field"] == "Q"


def test_projective_comparison_is_isomorphism():
    rep = shukla.compare("k_times_k", "quotient_point", "r_equals_a", n=3)
    assert [row["isomorphism"] for row in rep["alpha"]] == [True] * 4


def test_lie_semisimple_over_base_field():
    rep = shukla.cohomology("base_field", "sl2", "adjoint_module", lie=True, n=4)
    assert rep["h"][:4] == [1, 0, 0, 1]
    assert rep["flavor"] == "shukla-lie"


def test_validate_accepts_dict_input():
    bad = {
        "kind": "algebra",
        "labels": ["1", "t"],
        "mult": [[[["0", "1"], ["0", "0"]], [["0", "0"], ["0", "0"]]],
                 [[["0", "0"], ["0", "0"]], [["0", "0"], ["0", "0"]]]],
        "unit": ["1", "0"],
    }
    rep = shukla.validate(bad, "r_equals_a", "regular_module")
    assert rep["accepted"] is False
    assert any(not r["valid"] for r in rep["results"])


def test_extension_roundtrip_through_dicts():
    z = {
        "kind": "cocycle2",
        "field": "Q",
        "f": {"degree": 2, "dims": [1, 1, 1], "entries": []},
        "g": {"degree": 2, "dims": [2, 1, 1], "entries": [[1, "1"]]},
    }
    check = shukla.ext2_check("dual_numbers", "quotient_k", "trivial_module", z)
    assert check["accepted"] is True
    assert check["coboundary"] is None

    ext = shukla.ext2_build("dual_numbers", "quotient_k", "trivial_module", z)
    back = shukla.ext2_extract("dual_numbers", "quotient_k", "trivial_module", ext)
    assert back == z


def test_classification_over_f2():
    rep = shukla.ext2_classify("dual_numbers", "quotient_k", "trivial_module",
                               field="Fp:2")
    assert rep["num_classes"] == 2 ** rep["dim_h2"]


def test_unknown_builtin_raises():
    with pytest.raises(shukla.ShuklaError) as exc:
        shukla.cohomology("no_such_algebra", "r_equals_a", "regular_module")
    assert exc.value.exit_code == 64


def test_selftest_passes():
    log = shukla.selftest(seed=7)
    assert "selftest passed" in log
