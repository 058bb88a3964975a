from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from nhairy import NoConvergence
from nhairy.series import Parameters, build_series, double_zero_solution, evaluate, residual_check
from nhairy.special import (
    Hyp1F2Args,
    LommelParams,
    airy_homogeneous,
    airy_integral,
    function_series,
    hyp1f2,
    initial_values,
    lommel_integral,
    lommel_polya_form,
    lommel_series,
    polya_weight,
    scorer,
)
from nhairy.zeros import real_zeros

from oracles import GI0

THIRD = Fraction(1, 3)


def test_hyp1f2_at_zero():
    assert hyp1f2(Hyp1F2Args(1, Fraction(4, 3), Fraction(5, 3)), 0) == 1


@settings(max_examples=40)
@given(st.floats(-100, 100), st.floats(0.1, 3), st.floats(0.2, 3), st.floats(0.2, 3))
def test_hyp1f2_matches_mpmath(x, a1, b1, b2):
    got = hyp1f2(Hyp1F2Args(a1, b1, b2), x, precision=30)
    with mp.workdps(60):
        ref = mp.hyp1f2(a1, b1, b2, x)
    assert abs(got - ref) <= mp.mpf(10) ** -25 * max(1, abs(ref))


def test_hyp1f2_rejects_bad_lower_parameter():
    with pytest.raises(ValueError):
        Hyp1F2Args(1, -2, 1)


def test_hyp1f2_term_cap():
    with pytest.raises(NoConvergence):
        hyp1f2(Hyp1F2Args(1, 1, 1), 1e12, max_terms=50)


def test_hyp1f2_reproduces_double_zero_series():
    with mp.workdps(50):
        f = hyp1f2(Hyp1F2Args(1, Fraction(4, 3), Fraction(5, 3)), mp.mpf(1) / 9, 50) / 2
        s = evaluate(double_zero_solution(Parameters(1, 0, 1), 1.5, precision=50), 1).value
        assert abs(f - s) < 1e-30


def test_hyp1f2_has_negative_zero():
    # the nu = 1/3 Lommel 1F2 changes sign on the negative axis
    args = Hyp1F2Args(1, (3 - THIRD) / 2, (3 + THIRD) / 2)
    lo, hi = -mp.pi ** 2, -mp.pi ** 2 / 4
    with mp.workdps(40):
        root = mp.findroot(lambda x: hyp1f2(args, x, 40), (lo, hi), solver="anderson")
        assert lo <= root <= hi
        assert abs(hyp1f2(args, root, 40)) < 1e-30


def test_lommel_small_z_limit():
    with mp.workdps(40):
        z = mp.mpf(10) ** -8
        assert abs(lommel_series(LommelParams(0, THIRD), z) / z - mp.mpf(9) / 8) < 1e-14


def test_lommel_is_odd():
    p = LommelParams(0, THIRD)
    assert abs(lommel_series(p, -2) + lommel_series(p, 2)) < mp.mpf(10) ** -45


def test_lommel_nondegeneracy():
    with pytest.raises(ValueError):
        LommelParams(0, 1)


@pytest.mark.parametrize("nu", [0.1, THIRD, 0.7])
@pytest.mark.parametrize("z", [0.5, 2, 5, 10])
def test_lommel_representations_agree(nu, z):
    s = lommel_series(LommelParams(0, nu), z)
    assert abs(s - lommel_integral(nu, z)) < 1e-20
    assert abs(s - lommel_polya_form(nu, z)) < 1e-20


def test_lommel_integral_at_zero():
    assert lommel_integral(THIRD, 0) == 0


def test_lommel_rejects_nu():
    with pytest.raises(ValueError):
        lommel_integral(1, 2)


def test_polya_weight_values():
    with mp.workdps(30):
        assert abs(polya_weight(0, 0.5) - 4 / mp.sqrt(3)) < 1e-25
        assert polya_weight(0.9, 1 - mp.mpf(10) ** -20) > 1e9
    with pytest.raises(ValueError):
        polya_weight(THIRD, 1)


@pytest.mark.parametrize("nu", [0.1, THIRD, 0.7, -0.5])
def test_polya_weight_positive_increasing(nu):
    values = [polya_weight(nu, mp.mpf(k) / 10 ** 4, 20) for k in range(1, 10 ** 4)]
    assert values[0] > 0
    assert all(b > a for a, b in zip(values, values[1:]))


def test_gi_at_zero():
    assert abs(scorer("Gi", 0, 30) - mp.mpf(GI0)) < 1e-24


def test_initial_values_consistent_with_gamma_oracle():
    with mp.workdps(40):
        ai0, dai0 = initial_values("Ai", 40)
        assert abs(ai0 - mp.airyai(0)) < 1e-35 and abs(dai0 - mp.airyai(0, 1)) < 1e-35
        bi0, dbi0 = initial_values("Bi", 40)
        assert abs(bi0 - mp.airybi(0)) < 1e-35 and abs(dbi0 - mp.airybi(0, 1)) < 1e-35
        assert abs(initial_values("Gi", 40)[0] - mp.scorergi(0)) < 1e-35


@pytest.mark.parametrize("z", [-3, -2, -1, 0, 0.5, 1, 2, 3])
def test_scorer_sum_is_bi(z):
    total = scorer("Gi", z, 40) + scorer("Hi", z, 40)
    assert abs(total - airy_homogeneous("Bi", z, 40)) < 1e-20


@pytest.mark.parametrize("z", [-6, 1, 5])
def test_scorer_matches_mpmath(z):
    with mp.workdps(40):
        assert abs(scorer("Hi", z, 40) - mp.scorerhi(z)) < 1e-25 * max(1, abs(mp.scorerhi(z)))
        assert abs(airy_homogeneous("Ai", z, 40) - mp.airyai(z)) < 1e-25


def test_scorer_residuals():
    assert residual_check(function_series("Hi", 4.0, 50), 1) < 1e-25
    assert residual_check(function_series("Ai", 4.0, 50), 1) < 1e-25


@pytest.mark.parametrize("z", [0, 1, -2])
def test_wronskian(z):
    with mp.workdps(40):
        ai, dai = airy_homogeneous("Ai", z, 40, derivative=True)
        bi, dbi = airy_homogeneous("Bi", z, 40, derivative=True)
        assert abs(ai * dbi - dai * bi - 1 / mp.pi) < 1e-20


def test_double_zero_airy_representation():
    p, z = mp.mpf(1) / 2, 1
    with mp.workdps(40):
        rep = mp.pi * (airy_homogeneous("Bi", z, 40) * airy_integral("Ai", p, z, precision=40)
                       - airy_homogeneous("Ai", z, 40) * airy_integral("Bi", p, z, precision=40))
        tau = build_series(Parameters(1, 0, 1), p, 0, 0, 60, 40)
        assert abs(rep - evaluate(tau, z).value) < 1e-15


def test_kind_validation():
    with pytest.raises(ValueError):
        scorer("Ai", 0)
    with pytest.raises(ValueError):
        airy_homogeneous("Hi", 0)


def test_lommel_zero_via_finder():
    # s_{0,1/3} zeros sit where the 1F2 vanishes: cross-check against the series solution
    zeros = real_zeros(Parameters(0, -1, 0), 3, 4, tol=1e-25, precision=40)
    assert len(zeros) == 1 and abs(zeros[0].location - mp.pi) < 1e-25


def test_adaptive_gauss():
    from nhairy.quadrature import adaptive_gauss
    assert abs(adaptive_gauss(mp.sin, 0, mp.pi, 1e-40, dps=50) - 2) < 1e-40
    assert adaptive_gauss(mp.exp, 1, 1, 1e-10) == 0
    assert abs(adaptive_gauss(mp.exp, 1, 0, 1e-30, dps=40) - (1 - mp.e)) < 1e-30


def test_adaptive_gauss_failure():
    from nhairy import QuadratureFailure
    from nhairy.quadrature import adaptive_gauss
    with pytest.raises(QuadratureFailure):
        adaptive_gauss(lambda x: 1 / x, 0, 1, 1e-20, max_depth=8, dps=30)
