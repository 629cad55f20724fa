"""
Command-line verbs, exit codes and report bytes.
"""

import io
import json

import pytest

from tpsbench.app.cli import run
from tpsbench.app.services.reports import build_report, emit_report
from tpsbench.tests.conftest import ALGEBRA_DIR


def invoke(*argv):
    out, err = io.BytesIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def report(*argv):
    code, raw, err = invoke(*argv)
    assert err == ""
    return code, json.loads(raw)


def test_jacobi_passes():
    code, doc = report("jacobi", "--alg", "w_abs", "--a", "1", "--b", "-1", "--imin", "-3", "--imax", "3")
    assert code == 0
    assert doc["passed"] is True
    assert doc["result"]["violations_total"] == 0
    assert doc["result"]["violations"] == []
    assert doc["window"] == {"i_min": -3, "i_max": 3, "alpha_coeff_bound": 0}
    assert doc["algebra"]["parameters"] == {"a": "1", "b": "-1"}


def test_halfder_solve_reports_interior():
    code, doc = report(
        "halfder-solve", "--alg", "w_ab", "--a", "0", "--b", "2",
        "--shift", "0", "--imin", "-4", "--imax", "4", "--out-pad", "4",
    )
    assert code == 0
    shift = doc["result"]["shifts"][0]
    assert shift["grade_shift"] == "0"
    assert shift["interior"]["interior_dimension"] == 1
    assert doc["inputs"] == {"shifts": ["0"], "out_pad": 4}


def test_negative_fractional_shift():
    code, doc = report(
        "halfder-solve", "--alg", "w_abs", "--a", "0", "--b", "-1",
        "--shift=-1/2", "--imin", "-3", "--imax", "3", "--out-pad", "1",
    )
    assert code == 0
    assert doc["result"]["shifts"][0]["grade_shift"] == "-1/2"


def test_tps_check_violation_exits_one():
    code, doc = report(
        "tps-check", "--alg", "w_ab", "--a", "0", "--b", "0", "--product", "plain-W", "--imin", "-3", "--imax", "3",
    )
    assert code == 1
    assert doc["passed"] is False
    assert doc["result"]["transposed_poisson"] is False
    assert doc["result"]["compatible"]["witness"] is not None
    assert doc["result"]["commutative"]["ok"] is True


def test_tps_check_mutation_product():
    code, doc = report(
        "tps-check", "--alg", "w_abs", "--a", "0", "--b", "-1", "--product", "mutation", "--w", "L(1) + 2*I(0)",
        "--imin", "-2", "--imax", "2",
    )
    assert code == 0
    assert doc["result"]["product"] == "mutation(plain-W)"


def test_mutation_verb():
    code, doc = report(
        "mutation", "--alg", "w_abs", "--a", "0", "--b", "-1", "--w", "2*L(1)", "--x", "L(0)", "--y", "I(0)",
    )
    assert code == 0
    assert doc["result"]["product"] == [{"family": "I", "alpha": "0", "i": 1, "coefficient": "2"}]
    assert doc["result"]["base"] == "plain-W"


def test_mutation_uses_declared_product_of_file():
    code, doc = report(
        "mutation", "--file", str(ALGEBRA_DIR / "w_abs.liealg"), "--w", "2*L(1)", "--x", "L(0)", "--y", "I(0)",
    )
    assert code == 0
    assert doc["result"]["base"] == "w_abs.product"
    assert doc["result"]["product"] == [{"family": "I", "alpha": "0", "i": 1, "coefficient": "2"}]


def test_halfder_check_family():
    code, doc = report(
        "halfder-check", "--alg", "w_ab", "--a", "0", "--b", "-1",
        "--seed", "alpha:1=2", "--seed", "beta:0=1", "--imin", "-3", "--imax", "3",
    )
    assert code == 0
    assert doc["result"]["ok"] is True
    assert doc["result"]["pairs_checked"] > 0
    assert doc["inputs"]["seeds"] == ["alpha:1=2", "beta:0=1"]


def test_halfder_family_rejects_foreign_seed():
    code, raw, err = invoke("halfder-family", "--alg", "w_ab", "--a", "0", "--b", "-1", "--seed", "gamma:0=1")
    assert code == 2
    assert raw == b""
    assert err.startswith("ERR_HD_FAMILY")


def test_formal_family_without_window_is_a_usage_error():
    code, raw, err = invoke("halfder-family", "--alg", "hwn_g", "--n", "1", "--gen", "1", "--seed", "a:1,0=1")
    assert code == 2
    assert raw == b""
    assert err.startswith("ERR_USAGE")
    assert "--imin" in err and "--imax" in err


def test_reports_are_byte_identical():
    argv = ["tps-check", "--alg", "w_ab", "--a", "0", "--b", "0", "--imin", "-2", "--imax", "2"]
    first = invoke(*argv)
    second = invoke(*argv)
    assert first[1] == second[1]
    assert first[1].endswith(b"\n")
    assert list(json.loads(first[1])) == sorted(json.loads(first[1]))


def test_unknown_algebra():
    code, raw, err = invoke("alg-show", "--alg", "bogus")
    assert code == 2
    assert raw == b""
    assert err.startswith("ERR_ALG_UNKNOWN")


@pytest.mark.parametrize(
    "argv",
    [
        ["jacobi", "--alg", "witt"],
        ["bracket", "--x", "L(1)", "--y", "L(2)"],
        ["bracket", "--alg", "witt", "--x", "L(1)"],
        ["frobnicate", "--alg", "witt"],
        ["alg-show", "--alg", "witt", "--file", "witt.liealg"],
        ["tps-check", "--alg", "witt", "--product", "mutation", "--imin", "-1", "--imax", "1"],
    ],
)
def test_usage_errors(argv):
    code, raw, err = invoke(*argv)
    assert code == 2
    assert raw == b""
    assert err.startswith("ERR_USAGE")


def test_alg_list():
    code, doc = report("alg-list")
    assert code == 0
    names = {entry["name"]: entry["required_params"] for entry in doc["result"]["algebras"]}
    assert names["witt"] == []
    assert names["wn_g"] == ["n", "generators"]
    assert set(names) == {"witt", "w_ab", "w_abs", "wn_g", "hwn_g"}


def test_alg_show_describes_parameters():
    code, doc = report("alg-show", "--alg", "w_ab", "--a", "0", "--b", "2")
    assert code == 0
    assert doc["result"]["description"]["parameters"] == {"a": "0", "b": "2"}
    assert "bracket" in doc["result"]["source"]


def test_bracket_from_file():
    code, doc = report("bracket", "--file", str(ALGEBRA_DIR / "witt.liealg"), "--x", "L(1)", "--y", "L(2)")
    assert code == 0
    assert doc["result"]["bracket"] == [{"family": "L", "alpha": "0", "i": 3, "coefficient": "1"}]
    assert doc["algebra"]["source"].startswith("file:")


def test_file_parse_error_location(tmp_path):
    path = tmp_path / "broken.liealg"
    path.write_text("algebra witt() {\n  family L(i offset 0 grade i;\n}\n", encoding="utf-8")
    code, raw, err = invoke("alg-parse", "--file", str(path))
    assert code == 2
    assert raw == b""
    assert err.startswith("ERR_DSL_SYNTAX")


def test_missing_file():
    code, _, err = invoke("alg-parse", "--file", "/nonexistent/none.liealg")
    assert code == 2
    assert err.startswith("ERR_USAGE")


def test_out_file(tmp_path):
    target = tmp_path / "reports" / "jacobi.json"
    code, raw, err = invoke("jacobi", "--alg", "witt", "--imin", "-2", "--imax", "2", "--out", str(target))
    assert code == 0
    assert raw == b""
    doc = json.loads(target.read_bytes())
    assert doc["verb"] == "jacobi"
    assert doc["result"]["ok"] is True


def test_unwritable_out(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("", encoding="utf-8")
    code, raw, err = invoke("jacobi", "--alg", "witt", "--imin", "-1", "--imax", "1", "--out", str(blocker / "r.json"))
    assert code == 2
    assert err.startswith("ERR_USAGE")


def test_emit_report_is_canonical():
    doc = build_report("bracket", {"z": [], "a": {"y": 1, "b": 2}}, inputs={"x": "L(1)"})
    raw = emit_report(doc)
    assert raw == emit_report(doc)
    assert raw.decode("utf-8").index('"a"') < raw.decode("utf-8").index('"z"')
    assert json.loads(raw)["result"]["z"] == []
