"""Tests for the identity-suite runner."""

from __future__ import annotations

import math

import pytest

from basicq import run_verify
from basicq.verify import DEFAULT_SWEEP, IdentityResult, VerifyReport, lattice_for_q


def test_default_sweep_all_pass():
    report = run_verify()
    assert isinstance(report, VerifyReport)
    assert report.q_values == DEFAULT_SWEEP
    assert report.all_pass
    assert not report.failures
    for r in report.results:
        assert r.status == "PASS"
        assert r.max_residual <= r.tolerance


def test_report_covers_the_advertised_identities():
    names = {r.name for r in run_verify(q_values=(0.9,)).results}
    for expected in (
        "leibniz-1", "leibniz-2", "chain-scaling",
        "fundamental-deriv-of-int", "fundamental-int-of-deriv",
        "by-parts-shifted-q", "by-parts-shifted-qinv",
        "q-pythagoras", "trig-deriv-sin", "trig-deriv-cos",
        "wave-equation", "exp-eigenrelation", "dual-integral",
        "factorial-bridge", "dual-representation", "fock-algebra",
        "momentum-hermiticity-even", "momentum-hermiticity-odd",
    ):
        assert expected in names


def test_single_q_runs_everything():
    report = run_verify(q_values=(0.9,))
    assert all(r.status == "PASS" for r in report.results)


def test_classical_only_skips_deformation_bound_identities():
    report = run_verify(q_values=(1.0,))
    by_name = {r.name: r for r in report.results}
    assert by_name["leibniz-1"].status == "SKIP"
    assert by_name["factorial-bridge"].status == "SKIP"
    assert math.isnan(by_name["leibniz-1"].max_residual)
    assert by_name["q-pythagoras"].status == "PASS"
    assert by_name["wave-equation"].status == "PASS"
    assert by_name["fock-algebra"].status == "PASS"
    # a SKIP is not a failure
    assert report.all_pass


def test_tolerance_override_forces_failures():
    report = run_verify(q_values=(0.9,), tol_override=1e-30)
    assert not report.all_pass
    assert len(report.failures) > 5
    for r in report.results:
        if r.status != "SKIP":
            assert r.tolerance == 1e-30


def test_rejects_bad_q_values():
    with pytest.raises(ValueError):
        run_verify(q_values=(0.9, -1.0))
    with pytest.raises(ValueError):
        run_verify(q_values=(math.nan,))
    with pytest.raises(ValueError):
        run_verify(q_values=())


def test_results_are_frozen_records():
    r = run_verify(q_values=(0.9,)).results[0]
    assert isinstance(r, IdentityResult)
    with pytest.raises(Exception):
        r.status = "FAIL"


def test_lattice_for_q_scales_exponent_window():
    for q in (0.5, 0.9, 0.99):
        lat = lattice_for_q(q)
        assert lat.x.max() >= 4.0
        assert min(abs(lat.x[lat.x > 0])) <= 2e-3
    # finer deformation needs a wider exponent range for the same decades
    assert lattice_for_q(0.99).m_max > lattice_for_q(0.9).m_max


def test_runtime_budget():
    import time
    t0 = time.monotonic()
    run_verify()
    assert time.monotonic() - t0 < 60.0
