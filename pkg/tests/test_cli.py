import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from basistype.cli import main

GOLDEN = Path(__file__).parent / "golden"
UPDATE = os.environ.get("BASISTYPE_UPDATE_GOLDEN") == "1"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    lines = out.splitlines()
    assert len(lines) == 1, out
    return code, json.loads(lines[0])


# --- golden files --------------------------------------------------------------

GOLDEN_CASES = {
    "type_oplus": ["type", "oplus(O(3),Unc(2,5))"],
    "type_tensor": ["type", "tensor(O(2),BH)"],
    "type_quotient": ["type", "quotient(Unc(2,5))"],
    "type_corner": ["type", "corner_infinite_simple"],
    "type_limit_ibn": ["type", "limit(Commutative,T2,ibn)"],
    "equiv_o3": ["equiv", "O(3)", "1", "2"],
    "equiv_undecided": ["equiv", "quotient(Unc(2,5))", "1", "4"],
    "canon": ["canon", "type(3,2)", "9"],
    "classes": ["classes", "Unc(2,5)"],
    "classes_ibn": ["classes", "Commutative"],
    "witness_o2": ["witness", "O(2)", "1", "3", "--verify"],
    "witness_unc": ["witness", "Unc(2,5)", "2", "5"],
    "oracle": ["oracle", "--pairs", "2:4", "--bound", "6"],
    "catalog_o3": ["catalog", "O:3"],
    "catalog_list": ["catalog"],
    "validate_catalog": ["validate-catalog"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
@pytest.mark.parametrize("mode", ["text", "json"])
def test_golden(capsys, name, mode):
    argv = GOLDEN_CASES[name] + (["--json"] if mode == "json" else [])
    code, out, _ = run(capsys, *argv)
    assert code == 0
    path = GOLDEN / f"{name}.{mode}"
    if UPDATE:
        path.write_text(out, encoding="utf-8")
    assert out == path.read_text(encoding="utf-8")


# --- documented examples ----------------------------------------------------------


def test_type_example(capsys):
    code, data = run_json(capsys, "type", "oplus(O(3),Unc(2,5))")
    assert code == 0
    assert data["status"] == "NonIBN" and data["exact"] == {"N": 2, "K": 6}


def test_equiv_example(capsys):
    code, data = run_json(capsys, "equiv", "O(3)", "1", "2")
    assert code == 0 and data["equivalent"] is False
    code, data = run_json(capsys, "equiv", "O(3)", "1", "5")
    assert data["equivalent"] is True


def test_equiv_undecided_names_bound(capsys):
    code, data = run_json(capsys, "equiv", "quotient(Unc(2,5))", "1", "4")
    assert code == 0 and data["equivalent"] == "undecided" and data["blocking"] == "hi_n"


def test_witness_example(capsys):
    code, data = run_json(capsys, "witness", "O(3)", "1", "2")
    assert code == 2 and data["error"]["code"] == "NotEquivalent"


def test_witness_round_trips_through_verify(capsys, tmp_path):
    path = tmp_path / "w.json"
    code, _, _ = run(capsys, "witness", "Unc(2,3)", "2", "4", "-o", str(path))
    assert code == 0
    code, data = run_json(capsys, "verify", str(path))
    assert code == 0 and data["result"] == "Verified" and data["defects"] == []


def test_oracle_agrees_with_library(capsys):
    code, data = run_json(capsys, "oracle", "--pairs", "3:5,4:10", "--bound", "12")
    assert code == 0
    assert data["derived_type"] == {"N": 3, "K": 2}
    assert data["classes"] == [[0], [1], [2], [3, 5, 7, 9, 11], [4, 6, 8, 10, 12]]


def test_custom_catalog(capsys, tmp_path):
    entry = {
        "id": "Mine",
        "display_name": "Mine",
        "k0_unit_order": 4,
        "ibn": "no",
        "ibn1": "no",
        "ibn2_stably_finite": "no",
        "knowledge": {"status": "NonIBN", "exact": {"N": 2, "K": 4}, "lo": None, "hi": None},
    }
    path = tmp_path / "cat.json"
    path.write_text(json.dumps({"entries": [entry]}))
    code, data = run_json(capsys, "catalog", "Mine", "--catalog", str(path))
    assert code == 0 and data["entry"]["knowledge"]["exact"] == {"N": 2, "K": 4}


# --- schema validity ------------------------------------------------------------------

SCHEMA_CASES = [
    ("type", ["type", "oplus(O(3),Unc(2,5))"]),
    ("type", ["type", "Commutative"]),
    ("type", ["type", "ext(O(2))"]),
    ("type", ["type", "corner_infinite_simple"]),
    ("equiv", ["equiv", "O(3)", "1", "2"]),
    ("equiv", ["equiv", "ext(O(2))", "2", "3"]),
    ("equiv", ["equiv", "BH", "0", "0"]),
    ("canon", ["canon", "Unc(2,5)", "11"]),
    ("canon", ["canon", "Oinf", "11"]),
    ("classes", ["classes", "O(4)"]),
    ("classes", ["classes", "T2"]),
    ("witness", ["witness", "O(3)", "2", "4", "--verify"]),
    ("witness", ["witness", "Unc(1,3)", "3", "1"]),
    ("oracle", ["oracle", "--pairs", "2:5", "--bound", "20"]),
    ("oracle", ["oracle", "--bound", "3"]),
    ("catalog", ["catalog"]),
    ("catalog", ["catalog", "Toeplitz"]),
    ("validate-catalog", ["validate-catalog"]),
]


@pytest.mark.parametrize("schema,argv", SCHEMA_CASES, ids=lambda x: " ".join(x) if isinstance(x, list) else x)
def test_json_output_matches_schema(capsys, schema_validator, schema, argv):
    code, data = run_json(capsys, *argv)
    assert code == 0
    schema_validator(schema, data)


def test_verify_output_matches_schema(capsys, schema_validator, tmp_path):
    path = tmp_path / "t.json"
    path.write_text(json.dumps({"rows": 1, "cols": 2, "entries": ["v1", "v2"], "presentation": "toeplitz2"}))
    code, data = run_json(capsys, "verify", str(path))
    assert code == 3 and data["result"] == "Inconclusive"
    schema_validator("verify", data)


def test_catalog_document_matches_schema(schema_validator):
    from jsonschema import Draft202012Validator

    from basistype.catalog import default_catalog

    from conftest import _schema

    Draft202012Validator(_schema("catalog.schema.json")).validate(default_catalog().to_json())


# --- exit-code contract, one case per error family ------------------------------------------------


@pytest.mark.parametrize(
    "argv,code,error_code",
    [
        (["type", "oplus(O(3)"], 1, "ParseError"),
        (["type", "Unc(5,2)"], 1, "ArityError"),
        (["equiv", "O(3)", "x", "2"], 1, "Usage"),
        (["frobnicate"], 1, "Usage"),
        (["oracle", "--pairs", "3:9", "--bound", "5"], 1, "Usage"),
        (["witness", "O(3)", "1", "2"], 2, "NotEquivalent"),
        (["catalog", "Nope"], 2, "UnknownCatalogId"),
        (["witness", "BH", "1", "2"], 2, "NotFound"),
        (["classes", "quotient(O(3))"], 2, "NotExact"),
        (["type", "oplus(type(1,2305843009213693951),type(1,2147483647))"], 2, "ArithmeticOverflow"),
    ],
)
def test_exit_codes(capsys, argv, code, error_code, schema_validator):
    got, data = run_json(capsys, *argv)
    assert got == code
    assert data["error"]["code"] == error_code
    schema_validator("error", data)


def test_parse_error_reports_offset(capsys):
    _, data = run_json(capsys, "type", "oplus(O(3),)")
    assert data["error"]["offset"] == 11


def test_inconclusive_exit_code(capsys, tmp_path):
    path = tmp_path / "t.json"
    path.write_text(json.dumps({"rows": 1, "cols": 2, "entries": ["v1", "v2"], "presentation": "toeplitz2"}))
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 3 and out.startswith("Inconclusive")


def test_step_bound_env_makes_verification_inconclusive(capsys, monkeypatch):
    monkeypatch.setenv("IBN_STEP_BOUND", "2")
    code, data = run_json(capsys, "witness", "O(2)", "1", "9", "--verify")
    assert code == 3 and data["verification"] == "Inconclusive"
    monkeypatch.setenv("IBN_STEP_BOUND", "-4")
    code, data = run_json(capsys, "witness", "O(2)", "1", "9", "--verify")
    assert code == 1


def test_invalid_catalog_file_is_domain_error(capsys, tmp_path):
    path = tmp_path / "cat.json"
    path.write_text(json.dumps({"entries": [{"id": "O:3", "k0_unit_order": 2, "ibn": "no", "knowledge": {"status": "NonIBN", "exact": {"N": 1, "K": 2}}}]}))
    code, data = run_json(capsys, "validate-catalog", "--catalog", str(path))
    assert code == 2 and data["error"]["code"] == "CatalogValidationError"


def test_missing_files_are_usage_errors(capsys, tmp_path):
    assert run_json(capsys, "verify", str(tmp_path / "nope.json"))[0] == 1
    assert run_json(capsys, "catalog", "--catalog", str(tmp_path / "nope.json"))[0] == 1


def test_text_errors_go_to_stderr(capsys):
    code, out, err = run(capsys, "type", "Unc(5,2)")
    assert code == 1 and out == "" and err.startswith("error:")


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "basistype", "type", "O(3)", "--json"], capture_output=True, text=True, check=True
    )
    assert json.loads(out.stdout)["exact"] == {"N": 1, "K": 2}
