import math

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from nhairy import RadiusExceeded
from nhairy.series import (
    LocalExpansions,
    Parameters,
    build_series,
    continue_to,
    derivative,
    double_zero_solution,
    evaluate,
    float_taylor,
    recenter,
    residual_check,
    series_covering,
    value_and_derivative,
    values_fast,
)

from oracles import taylor_coeffs

small = st.floats(-2, 2, allow_nan=False, allow_infinity=False)


def test_double_zero_coefficients():
    s = build_series(Parameters(1, 0, 1), 0, 0, 0, 12, 50)
    with mp.workdps(50):
        assert s.coeffs[:6] == (0, 0, mp.mpf(1) / 2, 0, 0, mp.mpf(1) / 40)


def test_double_zero_reduces_to_factorial_pattern():
    N = 40
    s = build_series(Parameters(1, 0, 1), 0, 0, 0, N, 50)
    with mp.workdps(50):
        for k, g in enumerate(s.coeffs):
            if k % 3 == 2:
                n = (k - 2) // 3
                assert abs(g - mp.mpf(3) ** n * mp.factorial(n) / mp.factorial(3 * n + 2)) < mp.mpf(10) ** -60
            else:
                assert g == 0


def test_sine_coefficients():
    s = build_series(Parameters(0, -1, 0), 0, 0, 1, 10, 50)
    with mp.workdps(50):
        expected = [0, 1, 0, mp.mpf(-1) / 6, 0, mp.mpf(1) / 120]
        assert all(abs(g - e) < mp.mpf(10) ** -48 for g, e in zip(s.coeffs, expected))


def test_shifted_centre_e4():
    s = build_series(Parameters(1, 0, 1), 2, 0, 0, 10, 50)
    with mp.workdps(50):
        assert abs(s.coeffs[4] - mp.mpf(1) / 12) < mp.mpf(10) ** -48


def test_evaluate_at_double_zero_centre():
    r = evaluate(build_series(Parameters(1, 0, 1), 0, 0, 0, 30, 50), 0)
    assert r.value == 0 and r.abs_error_bound == 0


def test_sine_vanishes_at_pi():
    s = build_series(Parameters(0, -1, 0), 0, 0, 1, 80, 50)
    with mp.workdps(50):
        assert abs(evaluate(s, mp.pi).value) < 1e-30


def test_proportional_to_c():
    one = build_series(Parameters(1, 0, 1), 0, 0, 0, 60, 50)
    two = build_series(Parameters(1, 0, 2), 0, 0, 0, 60, 50)
    with mp.workdps(50):
        assert all(g2 == 2 * g1 for g1, g2 in zip(one.coeffs, two.coeffs))
        assert evaluate(two, 1).value == 2 * evaluate(one, 1).value


def test_derivative_examples():
    tau = build_series(Parameters(1, 0, 1), 0.5, 0, 0, 30, 50)
    assert evaluate(derivative(tau), 0.5).value == 0
    sine = build_series(Parameters(0, -1, 0), 0, 0, 1, 30, 50)
    assert evaluate(derivative(sine), 0).value == 1
    alpha = mp.mpf("0.375")
    assert evaluate(derivative(build_series(Parameters(-1, 2, 3), 1, 0, alpha, 30, 50)), 1).value == alpha


def test_residual_examples():
    s = build_series(Parameters(2, -1, 0.5), 0.3, 1, -2, 40, 50)
    assert residual_check(s, 0.3) < mp.mpf(10) ** -45
    sine = build_series(Parameters(0, -1, 0), 0, 0, 1, 60, 50)
    assert residual_check(sine, 1) < 1e-30


def test_radius_exceeded():
    s = build_series(Parameters(1, 0, 1), 0, 0, 0, 20, 50)
    with pytest.raises(RadiusExceeded):
        evaluate(s, 100)
    with pytest.raises(RadiusExceeded):
        value_and_derivative(s, 100)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        Parameters(float("nan"), 0, 0)
    with pytest.raises(ValueError):
        build_series(Parameters(), 0, 0, 1, 2, 50)
    with pytest.raises(ValueError):
        build_series(Parameters(), 0, 0, 1, 20, 5)


def test_terminating_series_has_infinite_radius():
    s = build_series(Parameters(0, 0, 0), 0, 1, 2, 10, 50)
    assert s.validity_radius == math.inf
    assert evaluate(s, 1000).value == 2001


def test_error_bound_covers_truth():
    s = build_series(Parameters(0, -1, 0), 0, 0, 1, 60, 50)
    r = evaluate(s, 3)
    with mp.workdps(60):
        assert abs(r.value - mp.sin(3)) <= r.abs_error_bound + mp.mpf(10) ** -49


@settings(max_examples=100)
@given(small, small, small, small, small, small, st.data())
def test_ode_residual(a, b, c, center, y0, y1, data):
    s = build_series(Parameters(a, b, c), center, y0, y1, 60, 40)
    radius = min(s.validity_radius, 3.0)
    for _ in range(10):
        r = data.draw(st.floats(0, 0.99 * radius))
        t = data.draw(st.floats(0, 2 * math.pi))
        z = center + r * complex(math.cos(t), math.sin(t))
        assert residual_check(s, z) < mp.mpf(10) ** -20


@settings(max_examples=30)
@given(small, small, small, small, small, small, small)
def test_matches_independent_recursion(a, b, c, center, y0, y1, x):
    s = build_series(Parameters(a, b, c), center, y0, y1, 30, 40)
    with mp.workdps(40):
        ref = taylor_coeffs(mp.mpf(a), mp.mpf(b), mp.mpf(c), mp.mpf(center), y0, y1, 30)
        assert all(abs(g - h) <= mp.mpf(10) ** -35 * max(1, abs(h)) for g, h in zip(s.coeffs, ref))


@settings(max_examples=30)
@given(small, small, small, small, small, small, small)
def test_linearity(a, b, c1, c2, y0, y1, shift):
    p = Parameters(a, b, c1)
    s1 = build_series(p, 0, y0, y1, 30, 40)
    s2 = build_series(p.replace(c=c2), 0, shift, -y1, 30, 40)
    with mp.workdps(40):
        total = build_series(p.replace(c=mp.mpf(c1) + mp.mpf(c2)), 0, mp.mpf(y0) + mp.mpf(shift), 0, 30, 40)
        for g1, g2, g in zip(s1.coeffs, s2.coeffs, total.coeffs):
            assert abs(g1 + g2 - g) <= mp.mpf(10) ** -38 * max(1, abs(g))


@settings(max_examples=30)
@given(small, small, small, st.floats(-1, 1), st.floats(-1, 1))
def test_derivative_matches_finite_difference(a, b, c, x, y):
    s = build_series(Parameters(a, b, c), 0, 0.5, 1, 60, 40)
    z = mp.mpc(x, y)
    with mp.workdps(40):
        h = mp.mpf(10) ** -12
        fd = (evaluate(s, z + h).value - evaluate(s, z - h).value) / (2 * h)
        assert abs(fd - evaluate(derivative(s), z).value) < 1e-20


def test_recenter_and_continue_agree():
    p = Parameters(-1, -1, -0.1)
    s = series_covering(p, 0, 0, 1, 6, 50)
    moved = recenter(s, 2, radius=3)
    far = continue_to(s, 5)
    with mp.workdps(50):
        assert abs(evaluate(moved, 4).value - evaluate(s, 4).value) < 1e-35
        assert abs(evaluate(far, 5).value - evaluate(s, 5).value) < 1e-35


def test_fast_paths_match_multiprecision():
    import numpy as np
    s = double_zero_solution(Parameters(1, 0, 1), 8, precision=50)
    zs = np.array([0.3 + 0.2j, -2 + 1j, 5 - 3j, 0])
    v, dv = values_fast(s, zs, with_derivative=True)
    local_v, local_dv = LocalExpansions(s).values(zs, with_derivative=True)
    for z, f, df, g, dg in zip(zs, v, dv, local_v, local_dv):
        exact, slope = value_and_derivative(s, z)
        assert abs(f - complex(exact)) <= 1e-12 * max(1, abs(complex(exact)))
        assert abs(df - complex(slope)) <= 1e-12 * max(1, abs(complex(slope)))
        assert abs(g - complex(exact)) <= 1e-10 * max(1, abs(complex(exact)))
        assert abs(dg - complex(slope)) <= 1e-10 * max(1, abs(complex(slope)))


def test_float_taylor_matches():
    g = float_taylor((1.0, -0.5, 0.25), 0.5, 1.0, -1.0, order=20)
    ref = taylor_coeffs(mp.mpf(1), mp.mpf(-0.5), mp.mpf(0.25), mp.mpf(0.5), 1, -1, 20)
    assert all(abs(x - complex(y)) < 1e-14 for x, y in zip(g, ref))
