import json
import shutil
import subprocess
import sys

import pytest

from mumwitness import cli
from mumwitness.data import DATA_DIR_ENV, FIXTURE_FILES


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _last_json(text):
    return json.loads(text[text.rindex("\n{") + 1 :] if "\n{" in text else text)


def test_mum_build(tmp_path, capsys):
    path = tmp_path / "m4.json"
    code, out, _ = run(capsys, "mum", "build", "-d", "4", "-o", str(path))
    assert code == 0
    summary = json.loads(out)
    assert summary["L"] == 5 and summary["axioms"]["passed"]
    assert len(json.loads(path.read_text())["elements"]) == 20


def test_mum_build_printed_parameters(capsys):
    code, out, _ = run(capsys, "mum", "build", "-d", "3", "--scheme", "paper-d3", "--t", "0.04066")
    assert code == 0
    assert json.loads(out)["kappa"] == pytest.approx(0.358, abs=1e-3)


def test_mum_build_infeasible(capsys):
    code, _, err = run(capsys, "mum", "build", "-d", "3", "--t", "0.2")
    assert code != 0 and "infeasible" in err


def test_witness_build_printed_match(tmp_path, capsys):
    path = tmp_path / "w.json"
    code, out, _ = run(capsys, "witness", "build", "--fixture", "mum-d3", "--angles", "pi/3,pi/3,0,0", "-o", str(path))
    assert code == 0
    summary = json.loads(out)
    assert summary["printed_deviation"] <= 2e-3
    assert summary["route_residual"] < 1e-12 and summary["min_eigenvalue"] < 0
    code, out, _ = run(capsys, "eval", str(path), "rho-3x3")
    report = json.loads(out)
    assert code == 0 and report["detected"] and report["value"] == pytest.approx(-0.0017, abs=5e-4)
    code, out, _ = run(capsys, "eval", str(path), "mixed-9")
    assert code == 0 and not json.loads(out)["detected"]


def test_witness_build_mub(capsys):
    code, out, _ = run(capsys, "witness", "build", "--fixture", "mub-d6")
    summary = json.loads(out)
    assert code == 0 and summary["L"] == 3 and summary["kappa"] == pytest.approx(1.0)


def test_witness_build_angle_count(capsys):
    code, _, err = run(capsys, "witness", "build", "--fixture", "mum-d3", "--angles", "0,0,0")
    assert code != 0 and "4 angles" in err


def test_eval_mub_d6(capsys):
    code, out, _ = run(capsys, "eval", "mub-d6", "rho-6x6")
    report = json.loads(out)
    # reference value is 0.68; this construction gives 0.30 (see notes)
    assert code == 0 and not report["detected"]


def test_eval_mum_file(tmp_path, capsys):
    mpath = tmp_path / "m.json"
    run(capsys, "mum", "build", "-d", "2", "-o", str(mpath))
    wpath = tmp_path / "w.json"
    code, _, _ = run(capsys, "witness", "build", "--mum", str(mpath), "-o", str(wpath))
    assert code == 0
    code, out, _ = run(capsys, "eval", str(wpath), "phi-plus-2")
    assert code == 0 and json.loads(out)["detected"]


def test_eval_missing_file(capsys):
    code, _, err = run(capsys, "eval", "/nonexistent.json", "rho-3x3")
    assert code != 0 and err


def test_scan_closed_form(capsys):
    code, out, _ = run(capsys, "scan", "isotropic", "-d", "3", "--kappa", "0.358")
    summary = _last_json(out)
    assert code == 0 and summary["crossing"] == pytest.approx(0.25, abs=0.005)


def test_scan_constructed_d5(capsys):
    code, out, _ = run(capsys, "scan", "isotropic", "-d", "5")
    assert code == 0 and _last_json(out)["crossing"] == pytest.approx(1 / 6, abs=0.005)


def test_scan_below_threshold(capsys):
    code, out, _ = run(capsys, "scan", "isotropic", "-d", "3", "--alpha-max", "0.2")
    summary = _last_json(out)
    assert code == 0 and summary["first_detected"] is None and summary["crossing"] is None
    assert "entangled" not in out


def test_scan_range_error(capsys):
    code, _, _ = run(capsys, "scan", "isotropic", "-d", "3", "--alpha-max", "1.5")
    assert code != 0


def test_compare(capsys):
    code, out, _ = run(capsys, "compare", "--fixture", "mum-d3", "--angles", "pi/3,pi/3,0,0", "rho-3x3")
    res = json.loads(out)
    assert code == 0 and res["witness"]["detected"] and not res["J"]["detected"]
    assert res["J"]["extra"]["margin"] == pytest.approx(-0.0085, abs=1e-3)


def test_repro_json_deterministic(capsys):
    _, out1, _ = run(capsys, "repro", "--json")
    _, out2, _ = run(capsys, "repro", "--json")
    assert out1 == out2
    rows = json.loads(out1)["rows"]
    labels = [r["label"] for r in rows]
    assert any("three MUBs" in l for l in labels) and len(rows) == 10
    for r in rows:
        assert r["pass"] == (abs(r["computed_value"] - r["paper_value"]) <= r["tolerance"])


def test_repro_corrupted_fixture(tmp_path, monkeypatch, capsys):
    from mumwitness import data

    src = data.__file__.rsplit("/", 1)[0]
    for name in FIXTURE_FILES:
        shutil.copy(f"{src}/{name}", tmp_path / name)
    (tmp_path / "rho_3x3_printed.json").write_text("{not json")
    monkeypatch.setenv(DATA_DIR_ENV, str(tmp_path))
    code, out, _ = run(capsys, "repro", "--json")
    rows = {r["label"]: r for r in json.loads(out)["rows"]}
    assert code != 0
    assert not rows["Tr(rho W) d=3"]["pass"] and "error" in rows["Tr(rho W) d=3"]
    assert rows["isotropic crossing d=3"]["pass"]


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "mumwitness.cli", "mum", "build", "-d", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["L"] == 3
