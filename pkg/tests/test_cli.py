"""End-to-end tests for the command-line interface.

Commands run in-process through ``main(argv)`` so exit codes and streams
are observable; one test goes through ``python -m`` to cover the module
entry point.
"""

from __future__ import annotations

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from basicq import (
    build_hamiltonian,
    build_lattice,
    jackson_derivative,
    q_cos,
    q_exp,
    q_integral_finite,
    q_integral_halfline,
    stationary_states,
)
from basicq.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- eval --------------------------------------------------------------------

def test_eval_csv_golden_at_zero(capsys):
    code, out, err = run(capsys, "eval", "--fn", "Sq", "--points", "0")
    assert code == 0
    assert out == "# schema_version=1\nx,re,im,terms_used\n0,0,0,1\n"


def test_eval_values_match_library(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "Eq", "--points", "0.5", "1.5", "--q", "0.8")
    assert code == 0
    rows = out.strip().splitlines()[2:]
    for x, line in zip((0.5, 1.5), rows):
        cells = line.split(",")
        ref = q_exp(x, 0.8)
        assert float(cells[0]) == x
        assert float(cells[1]) == pytest.approx(ref.value.real, rel=1e-15)
        assert float(cells[2]) == pytest.approx(ref.value.imag, abs=1e-15)
        assert int(cells[3]) == ref.terms_used


def test_eval_json_structure(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "Cq", "--points", "1",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    assert doc["columns"] == ["x", "re", "im", "terms_used"]
    (row,) = doc["rows"]
    assert row[1] == pytest.approx(q_cos(1.0, 0.9).value.real, rel=1e-15)


def test_eval_range_inclusive_endpoints(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "Sq", "--range", "0:2:0.1")
    assert code == 0
    rows = out.strip().splitlines()[2:]
    assert len(rows) == 21
    assert float(rows[0].split(",")[0]) == 0.0
    assert float(rows[-1].split(",")[0]) == pytest.approx(2.0, abs=1e-12)


def test_eval_range_descending(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "Sq", "--range", "2:0:-0.5")
    assert code == 0
    xs = [float(line.split(",")[0]) for line in out.strip().splitlines()[2:]]
    assert xs == pytest.approx([2.0, 1.5, 1.0, 0.5, 0.0], abs=1e-12)


def test_eval_points_and_range_conflict(capsys):
    code, _, err = run(capsys, "eval", "--fn", "Sq", "--points", "1",
                       "--range", "0:1:0.5")
    assert code == 2
    assert "mutually exclusive" in err


def test_eval_requires_some_points(capsys):
    code, _, err = run(capsys, "eval", "--fn", "Sq")
    assert code == 2
    assert "required" in err


def test_eval_rejects_unknown_function(capsys):
    code, _, err = run(capsys, "eval", "--fn", "Tq", "--points", "1")
    assert code == 2


def test_eval_negative_zero_canonicalized(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "Sq", "--points", "-0")
    assert code == 0
    assert out.strip().splitlines()[-1] == "0,0,0,1"


def test_eval_output_file(capsys, tmp_path):
    target = tmp_path / "table.csv"
    code, out, _ = run(capsys, "eval", "--fn", "Sq", "--points", "0",
                       "--output", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text() == "# schema_version=1\nx,re,im,terms_used\n0,0,0,1\n"


# -- qderiv ------------------------------------------------------------------

def test_qderiv_matches_library(capsys):
    code, out, _ = run(capsys, "qderiv", "--expr", "x^3", "--points", "0.5", "2",
                       "--q", "0.9")
    assert code == 0
    rows = out.strip().splitlines()[2:]
    f = lambda x: x ** 3
    for x, line in zip((0.5, 2.0), rows):
        cells = line.split(",")
        assert float(cells[1]) == pytest.approx(jackson_derivative(f, x, 0.9), rel=1e-14)
        assert float(cells[2]) == 0.0


def test_qderiv_bad_expression_is_usage_failure(capsys):
    code, _, err = run(capsys, "qderiv", "--expr", "x^^2", "--points", "1")
    assert code == 2
    assert err != ""


# -- qint --------------------------------------------------------------------

def test_qint_default_unit_interval(capsys):
    code, out, _ = run(capsys, "qint", "--expr", "x^2")
    assert code == 0
    val = float(out.strip().splitlines()[-1].split(",")[0])
    assert val == pytest.approx(q_integral_finite(lambda x: x * x, 1.0, 0.9), rel=1e-14)


def test_qint_explicit_upper(capsys):
    code, out, _ = run(capsys, "qint", "--expr", "x^3", "--upper", "2", "--q", "0.8")
    assert code == 0
    val = float(out.strip().splitlines()[-1].split(",")[0])
    assert val == pytest.approx(q_integral_finite(lambda x: x ** 3, 2.0, 0.8), rel=1e-14)


def test_qint_halfline(capsys):
    code, out, _ = run(capsys, "qint", "--expr", "gauss(x)")
    # default is the unit interval; halfline must be asked for
    assert code == 0
    code, out, _ = run(capsys, "qint", "--expr", "gauss(x)", "--halfline")
    assert code == 0
    val = float(out.strip().splitlines()[-1].split(",")[0])
    want = q_integral_halfline(lambda x: math.exp(-x * x), 0.9)
    assert val == pytest.approx(want, rel=1e-13)


def test_qint_mode_conflict(capsys):
    code, _, err = run(capsys, "qint", "--expr", "x", "--halfline", "--fullline")
    assert code == 2
    assert "mutually exclusive" in err


def test_qint_divergent_integrand_is_computation_failure(capsys):
    # the outer tail of the deformed exponential grows without bound
    code, _, err = run(capsys, "qint", "--expr", "Eq(x)", "--halfline", "--q", "0.5")
    assert code == 1
    assert err != ""


# -- verify ------------------------------------------------------------------

def test_verify_default_exits_zero(capsys):
    code, out, err = run(capsys, "verify")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "# schema_version=1"
    assert lines[1].startswith("identity,")
    assert len(lines) == 20  # header x2 + 18 identity rows
    for line in lines[2:]:
        assert line.endswith("PASS")


def test_verify_single_q_json(capsys):
    code, out, _ = run(capsys, "verify", "--q", "0.9", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["q_values"] == [0.9]
    assert doc["all_pass"] is True
    statuses = {r["status"] for r in doc["results"]}
    assert statuses == {"PASS"}


def test_verify_forced_tolerance_fails(capsys):
    code, out, err = run(capsys, "verify", "--force-tolerance", "1e-30")
    assert code == 1
    assert "FAIL" in out
    assert "verify failed" in err  # failure summary lands on stderr


# -- solve -------------------------------------------------------------------

def test_solve_writes_spectrum_and_eigenfunctions(capsys, tmp_path):
    code, out, _ = run(capsys, "solve", "--potential", "x^2", "--k", "3",
                       "--output", str(tmp_path))
    assert code == 0
    listed = out.strip().splitlines()
    assert listed[0] == str(tmp_path / "spectrum.json")
    assert len(listed) == 4

    doc = json.loads((tmp_path / "spectrum.json").read_text())
    assert doc["schema_version"] == 1
    assert doc["q"] == 0.9
    assert doc["lattice"] == {"m_min": -15, "m_max": 60, "a": 1.0}
    assert doc["meta"]["potential_text"] == "x^2"
    assert doc["meta"]["hbar"] == 1.0
    assert doc["meta"]["mass"] == 1.0

    lat = build_lattice(0.9, -15, 60, 1.0)
    H = build_hamiltonian(lambda x: x * x, 1.0, 1.0, lat)
    want = stationary_states(H, 3).eigenvalues
    assert np.allclose(doc["eigenvalues"], want, rtol=1e-12)

    for n in range(3):
        text = (tmp_path / f"eigfunc_{n:03d}.csv").read_text()
        assert text.startswith("# schema_version=1\n")
        assert len(text.strip().splitlines()) == 2 + lat.size


def test_solve_deterministic_bytes(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        d.mkdir()
        code, _, _ = run(capsys, "solve", "--potential", "x^2", "--k", "2",
                         "--output", str(d))
        assert code == 0
    for name in ("spectrum.json", "eigfunc_000.csv", "eigfunc_001.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_solve_respects_lattice_flag(capsys, tmp_path):
    # leading dash needs the '=' form or argparse reads it as a flag
    code, _, _ = run(capsys, "solve", "--potential", "x^2", "--k", "1",
                     "--lattice=-5:30:1.0", "--q", "0.8",
                     "--output", str(tmp_path))
    assert code == 0
    doc = json.loads((tmp_path / "spectrum.json").read_text())
    assert doc["lattice"] == {"m_min": -5, "m_max": 30, "a": 1.0}
    assert doc["q"] == 0.8


def test_solve_bad_lattice_string(capsys, tmp_path):
    code, _, err = run(capsys, "solve", "--potential", "x^2",
                       "--lattice", "abc", "--output", str(tmp_path))
    assert code == 2
    assert err != ""


def test_solve_complex_potential_rejected(capsys, tmp_path):
    code, _, err = run(capsys, "solve", "--potential", "Sq(x)+sqrt(0-1)*x",
                       "--output", str(tmp_path))
    assert code == 2
    assert err != ""


# -- evolve ------------------------------------------------------------------

def test_evolve_writes_snapshots_and_norms(capsys, tmp_path):
    code, out, _ = run(capsys, "evolve", "--potential", "x^2",
                       "--psi0", "gauss(x)", "--t", "1.0", "--steps", "20",
                       "--snap-every", "5", "--output", str(tmp_path))
    assert code == 0
    snaps = sorted(p.name for p in tmp_path.glob("snapshot_*.csv"))
    assert snaps == [f"snapshot_{i:04d}.csv" for i in range(5)]
    norms = (tmp_path / "norms.csv").read_text().strip().splitlines()
    assert norms[1] == "t,norm"
    rows = [line.split(",") for line in norms[2:]]
    assert len(rows) == 5
    assert float(rows[0][0]) == 0.0
    assert float(rows[-1][0]) == pytest.approx(1.0, rel=1e-12)
    for _, nv in rows:
        assert float(nv) == pytest.approx(1.0, abs=1e-12)


def test_evolve_default_grid_final_snapshot_only(capsys, tmp_path):
    code, _, _ = run(capsys, "evolve", "--potential", "x^2",
                     "--psi0", "gauss(x)", "--output", str(tmp_path))
    assert code == 0
    snaps = sorted(p.name for p in tmp_path.glob("snapshot_*.csv"))
    assert snaps == ["snapshot_0000.csv", "snapshot_0001.csv"]


def test_evolve_zero_initial_state_is_computation_failure(capsys, tmp_path):
    code, _, err = run(capsys, "evolve", "--potential", "x^2",
                       "--psi0", "0", "--output", str(tmp_path))
    assert code == 1
    assert "norm" in err


def test_evolve_bad_grid(capsys, tmp_path):
    code, _, err = run(capsys, "evolve", "--potential", "x^2",
                       "--psi0", "gauss(x)", "--t", "-1", "--output", str(tmp_path))
    assert code == 2


# -- configuration resolution ------------------------------------------------

def test_env_override_and_flag_precedence(capsys, monkeypatch):
    monkeypatch.setenv("BASICQ_Q", "0.5")
    _, out_env, _ = run(capsys, "eval", "--fn", "Eq", "--points", "1")
    val_env = float(out_env.strip().splitlines()[-1].split(",")[1])
    assert val_env == pytest.approx(q_exp(1.0, 0.5).value.real, rel=1e-14)
    # explicit flag wins over the environment
    _, out_flag, _ = run(capsys, "eval", "--fn", "Eq", "--points", "1", "--q", "0.9")
    val_flag = float(out_flag.strip().splitlines()[-1].split(",")[1])
    assert val_flag == pytest.approx(q_exp(1.0, 0.9).value.real, rel=1e-14)


def test_env_bad_value_is_usage_failure(capsys, monkeypatch):
    monkeypatch.setenv("BASICQ_Q", "banana")
    code, _, err = run(capsys, "eval", "--fn", "Eq", "--points", "1")
    assert code == 2
    assert err != ""


def test_env_lattice_override(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("BASICQ_LATTICE", "-3:20:1.0")
    code, _, _ = run(capsys, "solve", "--potential", "x^2", "--k", "1",
                     "--output", str(tmp_path))
    assert code == 0
    doc = json.loads((tmp_path / "spectrum.json").read_text())
    assert doc["lattice"] == {"m_min": -3, "m_max": 20, "a": 1.0}


def test_no_subcommand_is_usage_failure(capsys):
    code, _, err = run(capsys, )
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "basicq", "eval", "--fn", "Sq", "--points", "0"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "# schema_version=1\nx,re,im,terms_used\n0,0,0,1\n"
