"""Tests for basic numbers, deformed factorials, and shifted factorials."""

from __future__ import annotations

import math

import pytest

from basicq import (
    CLASSICAL_EPS,
    QParam,
    as_qparam,
    basic_factorial,
    basic_factorial_via_shifted,
    basic_number,
    q_shifted_factorial,
)

# High-precision references (50-digit arithmetic, rounded to double).
BASIC_NUMBER_REF = {
    (3, 0.9): 3.0445679012345679,
    (0.5, 0.9): 0.49930699897395463,
    (-2, 0.9): -2.0111111111111111,
    (7, 0.9): 7.6379432271522141,
    (3, 0.5): 5.25,
    (10, 0.5): 682.666015625,
}

FACTORIAL_REF = {
    (2, 0.9): 2.0111111111111111,
    (3, 0.9): 6.1229643347050754,
    (5, 0.9): 131.54403189556248,
    (8, 0.9): 57609.148219776978,
    (2, 0.5): 2.5,
    (3, 0.5): 13.125,
    (5, 0.5): 2972.0947265625,
    (8, 0.5): 1846203636.8132313,
}


@pytest.mark.parametrize("key,ref", sorted(BASIC_NUMBER_REF.items()))
def test_basic_number_reference_values(key, ref):
    x, q = key
    assert basic_number(x, q) == pytest.approx(ref, rel=1e-15)


@pytest.mark.parametrize("key,ref", sorted(FACTORIAL_REF.items()))
def test_basic_factorial_reference_values(key, ref):
    n, q = key
    assert basic_factorial(n, q) == pytest.approx(ref, rel=1e-14)


@pytest.mark.parametrize("q", [0.3, 0.5, 0.9, 0.99])
@pytest.mark.parametrize("x", [0.25, 1.0, 2.0, 5.5, -3.0])
def test_basic_number_q_inversion_symmetry(q, x):
    # the symmetric deformation cannot tell q from 1/q
    assert basic_number(x, q) == pytest.approx(basic_number(x, 1.0 / q), rel=1e-15)


@pytest.mark.parametrize("x", [-4.0, -0.7, 0.0, 0.3, 1.0, 6.0])
def test_basic_number_classical_branch_is_identity(x):
    assert basic_number(x, 1.0) == x
    assert basic_number(x, 1.0 + 0.5 * CLASSICAL_EPS) == x


def test_basic_number_is_odd_in_x():
    for x in (0.5, 1.0, 3.7):
        assert basic_number(-x, 0.8) == pytest.approx(-basic_number(x, 0.8), rel=1e-15)


def test_basic_number_continuity_toward_classical():
    # [x] -> x smoothly as the deformation switches off
    x = 2.5
    prev_gap = abs(basic_number(x, 0.9) - x)
    for q in (0.99, 0.999, 0.9999):
        gap = abs(basic_number(x, q) - x)
        assert gap < prev_gap
        prev_gap = gap
    assert prev_gap < 1e-7


def test_factorial_base_cases():
    assert basic_factorial(0, 0.9) == 1.0
    assert basic_factorial(1, 0.9) == 1.0
    assert basic_factorial(0, 1.0) == 1.0


def test_factorial_recurrence():
    q = 0.85
    for n in range(1, 12):
        assert basic_factorial(n, q) == pytest.approx(
            basic_factorial(n - 1, q) * basic_number(n, q), rel=1e-15)


def test_factorial_classical_matches_math_factorial():
    for n in range(10):
        assert basic_factorial(n, 1.0) == pytest.approx(math.factorial(n), rel=1e-13)


def test_factorial_rejects_bad_n():
    with pytest.raises(ValueError):
        basic_factorial(-1, 0.9)
    with pytest.raises(ValueError):
        basic_factorial(2.5, 0.9)
    with pytest.raises(ValueError):
        basic_factorial(True, 0.9)


def test_q_shifted_factorial_reference_values():
    assert q_shifted_factorial(0.3, 0.81, 5) == pytest.approx(0.31154612748153514, rel=1e-15)
    assert q_shifted_factorial(0.81, 0.81, 4) == pytest.approx(0.01743688060838605, rel=1e-14)


def test_q_shifted_factorial_empty_product():
    assert q_shifted_factorial(0.3, 0.81, 0) == 1.0


def test_q_shifted_factorial_infinite_product_converges():
    # (a; q)_inf exists for |q| < 1; check against a long finite product
    val = q_shifted_factorial(0.3, 0.81, math.inf)
    long = q_shifted_factorial(0.3, 0.81, 400)
    assert val == pytest.approx(long, rel=1e-14)


@pytest.mark.parametrize("q", [0.5, 0.8, 0.9, 0.95, 0.99])
@pytest.mark.parametrize("n", [0, 1, 2, 5, 13, 27, 40])
def test_factorial_shifted_route_agrees(n, q):
    # independent arithmetic path through the base-q^2 shifted factorial
    direct = basic_factorial(n, q)
    bridged = basic_factorial_via_shifted(n, q)
    assert bridged == pytest.approx(direct, rel=1e-12)


def test_factorial_shifted_route_rejects_classical():
    with pytest.raises(ValueError):
        basic_factorial_via_shifted(3, 1.0)


def test_large_order_growth_overflows_to_inf():
    # Around n ~ 44 at q = 0.3 the factorial leaves double range.  The
    # product route reports inf rather than raising; callers needing such
    # orders accumulate log [k] instead, which stays comfortably finite.
    q = 0.3
    n = 60
    log_fact = sum(math.log(basic_number(k, q)) for k in range(1, n + 1))
    assert log_fact > 700  # past the double-precision exponent range
    assert math.isinf(basic_factorial(n, q))
    assert math.isfinite(log_fact)


class TestQParam:
    def test_canonical_picks_lower_branch(self):
        assert as_qparam(0.9).canonical == 0.9
        assert as_qparam(1.0 / 0.9).canonical == pytest.approx(0.9, rel=1e-15)

    def test_classical_detection(self):
        assert as_qparam(1.0).classical
        assert as_qparam(1.0 + 0.5 * CLASSICAL_EPS).classical
        assert not as_qparam(0.999999).classical

    def test_idempotent(self):
        qp = as_qparam(0.7)
        assert as_qparam(qp) is qp

    def test_rejects_nonpositive_and_nonfinite(self):
        for bad in (0.0, -0.5, float("nan"), float("inf")):
            with pytest.raises(ValueError):
                as_qparam(bad)

    def test_frozen(self):
        qp = as_qparam(0.7)
        with pytest.raises(Exception):
            qp.q = 0.8

    def test_direct_construction_matches_helper(self):
        assert QParam(0.8).canonical == as_qparam(0.8).canonical
