"""Command-line behaviour: exit codes, output formats and golden reports.

Golden files live in tests/golden; set GEOMODEL_REGEN_GOLDEN=1 to rewrite
them after an intended output change.
"""

import json
import os
import pathlib
import subprocess
import sys

import pytest

from geomodel import samples
from geomodel.aut_checker.checker import QgcVerdict
from geomodel.cli.main import run

GOLDEN = pathlib.Path(__file__).parent / "golden"


@pytest.fixture
def sample_path(tmp_path):
    def make(name, data=None):
        path = tmp_path / f"{name}.json"
        path.write_text(samples.text(name) if data is None else json.dumps(data))
        return str(path)
    return make


def _run(argv, capsys):
    status = run(argv)
    out = capsys.readouterr()
    return status, out.out, out.err


@pytest.mark.parametrize("command,name,status", [
    ("verify-galois", "s3", 0),
    ("verify-galois", "cuberoot", 3),
    ("build-model", "elliptic", 0),
    ("build-model", "cuberoot", 3),
    ("check-qgc", "elliptic", 0),
    ("check-qgc", "s3_zc", 3),
    ("aut-group", "s3", 0),
    ("aut-group", "s3_zc", 3),
    ("report", "sqrt2", 0),
    ("report", "s3_zc", 0),
])
def test_exit_status(capsys, sample_path, command, name, status):
    assert _run([command, sample_path(name)], capsys)[0] == status


def test_input_errors_exit_2(capsys, sample_path, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"base": ')
    status, _, err = _run(["report", str(bad)], capsys)
    assert status == 2 and "invalid JSON" in err
    status, _, err = _run(["report", str(tmp_path / "missing.json")], capsys)
    assert status == 2
    d = json.loads(samples.text("elliptic"))
    d["extension"]["algebraics"][0]["min_poly"] = "s^2 - (t^3 - t"
    status, out, err = _run(["report", sample_path("elliptic", d), "--format", "json"], capsys)
    assert status == 2 and "column 15" in err
    assert json.loads(out)["error"]["type"] == "ParseError"


def test_inconclusive_exit_4(capsys, sample_path):
    d = json.loads(samples.text("elliptic"))
    d["cover"] = {"charts": [{"name": "V", "generators": ["t^2"]}], "overlaps": []}
    status, out, _ = _run(["build-model", sample_path("elliptic", d), "--format", "json"], capsys)
    assert status == 4
    assert json.loads(out)["error"]["type"] == "Inconclusive"


def test_budget_exit_4(capsys, sample_path):
    status, out, _ = _run(["report", sample_path("elliptic"), "--gb-budget", "1", "--format", "json"],
                          capsys)
    assert status == 4
    assert json.loads(out)["error"]["type"] == "BudgetExceeded"


def test_internal_invariant_exit_5(capsys, sample_path, monkeypatch):
    monkeypatch.setattr("geomodel.pipeline.qgc_check",
                        lambda model, gal=None, bound=None: QgcVerdict("refuted", {}, {}))
    status, out, _ = _run(["check-qgc", sample_path("sqrt2"), "--format", "json"], capsys)
    assert status == 5
    assert json.loads(out)["error"]["type"] == "InternalInvariantError"


def _text_verdicts(text):
    lines = text.split("== Verdicts ==\n", 1)[1].strip().splitlines()
    return dict(line.split(": ", 1) for line in lines)


def _as_text(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


@pytest.mark.parametrize("name", samples.NAMES)
def test_text_and_json_verdicts_agree(capsys, sample_path, name):
    path = sample_path(name)
    s1, text, _ = _run(["report", path], capsys)
    s2, js, _ = _run(["report", path, "--format", "json"], capsys)
    assert s1 == s2
    verdicts = json.loads(js)["verdicts"]
    assert _text_verdicts(text) == {k: _as_text(v) for k, v in verdicts.items()}


@pytest.mark.parametrize("name", samples.NAMES)
def test_golden_report(capsys, sample_path, name):
    _, out, _ = _run(["report", sample_path(name), "--format", "json"], capsys)
    golden = GOLDEN / f"{name}.report.json"
    if os.environ.get("GEOMODEL_REGEN_GOLDEN"):
        golden.write_text(out)
    assert out == golden.read_text()


def test_output_file_and_timings(capsys, sample_path, tmp_path):
    target = tmp_path / "out.json"
    status, out, _ = _run(["report", sample_path("sqrt2"), "--format", "json", "--timings",
                           "-o", str(target)], capsys)
    assert status == 0 and out == ""
    data = json.loads(target.read_text())
    assert set(data["timings_ms"]) >= {"tower", "galois", "model", "qgc"}
    assert data["limits"] == {"degree_bound": 6, "factor_degree_cap": 24, "gb_budget": 100000}


def test_limits_are_echoed(capsys, sample_path):
    _, out, _ = _run(["verify-galois", sample_path("sqrt2"), "--format", "json",
                      "--degree-bound", "3", "--seed", "9"], capsys)
    data = json.loads(out)
    assert data["seed"] == 9 and data["limits"]["degree_bound"] == 3


def test_console_entry_point(sample_path):
    proc = subprocess.run([sys.executable, "-m", "geomodel", "--version"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.startswith("geomodel ")
    proc = subprocess.run([sys.executable, "-m", "geomodel", "verify-galois", sample_path("cuberoot")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 3 and "not Galois" in proc.stderr
