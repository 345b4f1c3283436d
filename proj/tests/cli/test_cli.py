import json
import os
import subprocess
from pathlib import Path

import jsonschema
import pytest

CLI = os.environ.get("TVDIST_CLI", "build/tvdist")
SCHEMA = json.loads(
    Path(os.environ.get("TVDIST_SCHEMA", "schemas/run_report.schema.json")).read_text()
)
DATA = Path(__file__).resolve().parents[2] / "data"


def run(*args):
    proc = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True)
    doc = json.loads(proc.stdout) if proc.stdout.strip() else None
    if doc is not None:
        jsonschema.validate(doc, SCHEMA)
    return proc.returncode, doc, proc.stderr


def write(tmp_path, name, p, q):
    path = tmp_path / name
    path.write_text(json.dumps({"p": p, "q": q}))
    return path


@pytest.fixture
def identical(tmp_path):
    m = [[0.7, 0.3], [0.2, 0.3, 0.5]]
    return write(tmp_path, "same.json", m, m)


def test_estimate_identical_short_circuits(identical):
    code, doc, _ = run("estimate", identical, "--seed", 1)
    assert code == 0
    assert doc["result"]["estimate"] == 0
    assert doc["result"]["samples_used"] == 0


def test_estimate_bernoulli_is_deterministic():
    args = ("estimate", DATA / "bernoulli2.json", "--epsilon", 0.1, "--delta", 0.05, "--seed", 7)
    code, doc, _ = run(*args)
    assert code == 0
    result = doc["result"]
    assert 0.297 <= result["estimate"] <= 0.363
    assert result["samples_used"] == 1200
    assert doc["config"] == {"epsilon": 0.1, "delta": 0.05, "samples": 1200, "seed": 7, "workers": 1}
    _, again, _ = run(*args, "--workers", 4)
    assert again["result"]["estimate"] == result["estimate"]


def test_estimate_generates_and_reports_seed():
    code, doc, err = run("estimate", DATA / "bernoulli2.json", "--samples", 100)
    assert code == 0
    assert f"generated seed: {doc['config']['seed']}" in err
    assert doc["result"]["samples_used"] == 100


def test_estimate_diagnostics():
    code, doc, _ = run("estimate", DATA / "bernoulli2.json", "--seed", 3, "--diagnostics")
    assert code == 0
    diag = doc["result"]["diagnostics"]
    assert diag["steps"] == 2 * 1200
    assert diag["max_normalization_error"] <= 1e-12


def test_missing_file_is_io_error(tmp_path):
    code, doc, _ = run("estimate", tmp_path / "absent.json", "--seed", 1)
    assert code == 3
    assert doc["error"]["class"] == "io"


def test_validation_errors_name_the_coordinate(tmp_path):
    bad = write(tmp_path, "bad.json", [[0.5, 0.5], [0.7, 0.2]], [[0.5, 0.5], [0.5, 0.5]])
    code, doc, _ = run("estimate", bad, "--seed", 1)
    assert code == 2
    assert doc["error"]["kind"] == "MarginalNotNormalized"
    assert doc["error"]["coordinate"] == 2

    shape = write(tmp_path, "shape.json", [[0.5, 0.5]], [[1.0]])
    code, doc, _ = run("info", shape)
    assert code == 2
    assert doc["error"]["kind"] == "DomainMismatch"

    garbage = tmp_path / "garbage.json"
    garbage.write_text("{not json")
    code, doc, _ = run("exact", garbage)
    assert code == 2
    assert doc["error"]["kind"] == "ParseError"


def test_bad_flags_are_validation_errors():
    assert run("estimate", DATA / "bernoulli2.json", "--epsilon", -1, "--seed", 1)[0] == 2
    assert run("estimate", DATA / "bernoulli2.json", "--delta", 1.5, "--seed", 1)[0] == 2
    assert run("estimate", DATA / "bernoulli2.json", "--workers", 0, "--seed", 1)[0] == 2
    assert run("exact", DATA / "bernoulli2.json", "--max-states", "lots")[0] == 2
    assert run("bogus")[0] == 2


def test_exact(identical, tmp_path):
    code, doc, _ = run("exact", DATA / "bernoulli2.json")
    assert code == 0
    assert doc["result"]["exact_tv"] == pytest.approx(0.33, abs=1e-12)
    assert doc["result"]["states"] == 4
    assert run("exact", identical)[1]["result"]["exact_tv"] == 0

    big = write(tmp_path, "big.json", [[0.5, 0.5]] * 25, [[0.4, 0.6]] + [[0.5, 0.5]] * 24)
    code, doc, _ = run("exact", big, "--max-states", "2^20")
    assert code == 4
    assert doc["error"]["kind"] == "BudgetExceeded"
    assert run("exact", big, "--max-states", 1048576)[0] == 4


def test_naive():
    code, doc, _ = run("naive", DATA / "bernoulli2.json", "--samples", 100000, "--seed", 11)
    assert code == 0
    assert doc["result"]["method"] == "naive"
    assert doc["result"]["estimate"] == pytest.approx(0.33, abs=0.005)

    code, doc, _ = run("naive", DATA / "tiny_tv10.json", "--samples", 10000, "--seed", 2)
    assert code == 0
    assert doc["result"]["samples_used"] == 10000


def test_naive_identical(identical):
    assert run("naive", identical, "--samples", 1000, "--seed", 1)[1]["result"]["estimate"] == 0


def test_info(identical):
    code, doc, _ = run("info", DATA / "bernoulli2.json", "--epsilon", 0.1, "--delta", 0.05)
    assert code == 0
    result = doc["result"]
    assert result["per_coordinate_tv"] == pytest.approx([0.3, 0.3], abs=1e-14)
    assert result["pr_diff"] == pytest.approx(0.51, abs=1e-14)
    assert result["samples_for_config"] == 1200
    assert result["identical"] is False

    _, doc, _ = run("info", identical)
    assert doc["result"]["pr_diff"] == 0
    assert doc["result"]["identical"] is True
    assert "returns 0" in doc["result"]["note"]
