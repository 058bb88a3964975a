import warnings

import mpmath as mp
import pytest

from nhairy import Inconclusive, NotASimpleZero, ScanTooCoarse, ZeroOnContour
from nhairy.series import Parameters, double_zero_solution, principal_solution, value_and_derivative
from nhairy.zeros import (
    Family,
    argument_principle_count,
    asymptotic_modulus,
    classify_families,
    disk_zeros,
    double_zero_alpha,
    newton_refine,
    perturbed_zero_shift,
    perturbed_zero_shift_hypergeometric,
    polya_interval,
    ray_zeros,
    real_zeros,
    xi1_hypergeometric,
    xi1_series,
)

from oracles import RAY_MODULI, ZEROS_M1_M1_M1, ZEROS_M1_M1_M01

XI = Parameters(1, 0, 1)


@pytest.fixture(scope="module")
def xi_series():
    return double_zero_solution(XI, 14, precision=60)


@pytest.fixture(scope="module")
def rays():
    return ray_zeros(1, max_k=10, tol=1e-40, precision=60)


def test_polya_interval_examples():
    one, two, ten = polya_interval(1), polya_interval(2), polya_interval(10)
    assert abs(one.lo - mp.mpf("2.8108")) < 1e-4 and abs(one.hi - mp.mpf("4.4618")) < 1e-4
    assert two.lo == one.hi
    assert ten.hi - ten.lo < one.hi - one.lo
    with pytest.raises(ValueError):
        polya_interval(0)


def test_asymptotic_modulus():
    assert abs(asymptotic_modulus(1) - mp.mpf("3.2616")) < 1e-4
    for k in range(1, 30):
        iv = polya_interval(k)
        assert iv.lo < asymptotic_modulus(k) < iv.hi


@pytest.mark.parametrize("params, lo, hi, expected", [
    (Parameters(-1, -1, "-0.1"), 0.5, 3, ZEROS_M1_M1_M01[0]),
    (Parameters(-1, -1, -1), 0.5, 3, ZEROS_M1_M1_M1[0]),
    (Parameters(-1, -1, -1), 3, 4, ZEROS_M1_M1_M1[1]),
])
def test_real_zeros_examples(params, lo, hi, expected):
    found = real_zeros(params, lo, hi, tol=1e-30, precision=50)
    assert len(found) == 1
    assert abs(found[0].location - mp.mpf(expected)) < 1e-25


def test_real_zeros_finds_even_zero():
    # the double zero of Xi(., 1, 0) at the origin shows no sign change
    found = real_zeros(double_zero_solution(XI, 3, precision=50), -1, 1, tol=1e-20)
    assert len(found) == 1 and found[0].multiplicity == 2 and abs(found[0].location) < 1e-20


def test_real_zeros_warns_when_scan_is_coarse():
    # two zeros 1e-3 apart cannot be separated by one scan cell nor by the certified refinement
    params = Parameters(0, -1e6, 0)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        real_zeros(params, 0.001, 0.01, n_scan=2, max_halvings=0, precision=50)
    assert any(issubclass(w.category, ScanTooCoarse) for w in caught)


def test_ray_zero_geometry(rays):
    assert len(rays) == 30
    for k in range(10):
        triple = rays[3 * k: 3 * k + 3]
        iv = polya_interval(k + 1)
        r = abs(triple[0].location)
        assert abs(r - mp.mpf(RAY_MODULI[k])) < 1e-20
        assert all(iv.lo < abs(z.location) < iv.hi for z in triple)
        directions = (mp.expjpi(1), mp.expjpi(mp.mpf(1) / 3), mp.expjpi(-mp.mpf(1) / 3))
        hits = set()
        for z in triple:
            offsets = [abs(mp.arg(z.location / d)) for d in directions]
            assert min(offsets) < 1e-20
            hits.add(offsets.index(min(offsets)))
        assert hits == {0, 1, 2}


def test_ray_zeros_scale_with_a(rays):
    scaled = ray_zeros(8, max_k=3, tol=1e-40, precision=60)
    for z1, z8 in zip(rays[:9], scaled):
        assert abs(abs(z8.location) - abs(z1.location) / 2) < 1e-30


def test_ray_zeros_unpolished_agree(rays):
    raw = ray_zeros(1, max_k=4, tol=1e-40, precision=60, polish=False)
    assert all(abs(x.location - y.location) < 1e-30 for x, y in zip(raw, rays))


def test_argument_principle_examples(xi_series):
    assert argument_principle_count(xi_series, 0, 1) == 2
    inner, outer = float(polya_interval(1).lo), float(polya_interval(1).hi)
    assert argument_principle_count(xi_series, 0, outer) - argument_principle_count(xi_series, 0, inner) == 3
    S = principal_solution(Parameters(-1, -1, -0.1), 4, 50)
    z = real_zeros(S, 1, 3)[0].location
    assert argument_principle_count(S, complex(z), 0.1) == 1


@pytest.mark.parametrize("R", [5.0, 8.0, 11.0])
def test_argument_principle_completeness(R, xi_series):
    full = sum(1 for k in range(1, 20) if polya_interval(k + 1).lo < R)
    # R must not fall inside a Polya interval whose zero modulus is unknown
    moduli = [float(m) for m in RAY_MODULI]
    assert all(abs(R - m) > 0.05 for m in moduli)
    inside = sum(1 for m in moduli if m < R)
    assert argument_principle_count(xi_series, 0, R) == 2 + 3 * inside
    assert inside <= full + 1


def test_zero_on_contour():
    with pytest.raises(ZeroOnContour):
        argument_principle_count(Parameters(0, -1, 0), 0, mp.pi)


def test_disk_zeros_matches_rays(rays, xi_series):
    found = disk_zeros(xi_series, 0, 8.0)
    assert sum(r.multiplicity for r in found) == argument_principle_count(xi_series, 0, 8.0)
    assert found[0].multiplicity == 2 and abs(found[0].location) < 1e-20
    for rec in found[1:]:
        assert min(abs(rec.location - r.location) for r in rays) < 1e-20


def test_zero_records_revalidate():
    S = principal_solution(Parameters(-1, -1, -0.1), 7, 50)
    for rec in disk_zeros(S, 0, 6.0):
        assert abs(value_and_derivative(S, rec.location)[0]) <= 1e-20
        back, _ = newton_refine(S, rec.location + mp.mpf(10) ** -20)
        assert abs(back - rec.location) < 1e-20


def test_disk_zeros_inconclusive_when_seeds_miss():
    # a single seed per tile and tiles too coarse to resolve many zeros
    with pytest.raises(Inconclusive):
        disk_zeros(principal_solution(Parameters(0, -400, 0), 3, 60), 0, 2.0, tile=4.0, seeds=1)


def test_xi1_leading_coefficient():
    z = mp.mpf(10) ** -3
    assert abs(xi1_series(z, 1) / z ** 4 - mp.mpf(1) / 24) < 1e-8


@pytest.mark.parametrize("z, a", [(0.7, 1), (2.5, 1), (1.5 + 1j, -2)])
def test_xi1_resummation(z, a):
    assert abs(xi1_series(z, a) - xi1_hypergeometric(z, a)) < 1e-30


def test_xi1_is_the_b_derivative():
    h = mp.mpf(10) ** -15
    z = mp.mpf("1.3")
    plus = value_and_derivative(double_zero_solution(Parameters(1, h, 1), 2, precision=60), z)[0]
    minus = value_and_derivative(double_zero_solution(Parameters(1, -h, 1), 2, precision=60), z)[0]
    assert abs((plus - minus) / (2 * h) - xi1_series(z, 1, 60)) < 1e-20


def test_perturbed_shift_zero_b(rays):
    assert perturbed_zero_shift(rays[0].location, 1, 0) == 0


def test_perturbed_shift_forms_agree(rays):
    for rec in rays[:6]:
        assert abs(perturbed_zero_shift(rec.location, 1, 0.01) -
                   perturbed_zero_shift_hypergeometric(rec.location, 1, 0.01)) < 1e-25


def test_perturbed_shift_is_first_order(rays):
    xi0 = rays[0].location
    errors = []
    for b in (0.01, 0.005):
        exact_series = double_zero_solution(Parameters(1, b, 1), float(abs(xi0)) + 1, precision=50)
        exact, _ = newton_refine(exact_series, xi0)
        errors.append(abs(exact - xi0 - perturbed_zero_shift(xi0, 1, b)))
    # second-order remainder: halving b quarters the error
    assert 3 < errors[0] / errors[1] < 5
    assert errors[0] < 50 * 0.01 ** 2


def test_triple_moves_rigidly(rays):
    shifts = [perturbed_zero_shift(r.location, 1, 0.01) for r in rays[:3]]
    # the shift depends on xi0**3 only
    assert max(abs(s - shifts[0]) for s in shifts) < 1e-25


def test_perturbed_shift_rejects_double_zero():
    with pytest.raises(NotASimpleZero):
        perturbed_zero_shift(0, 1, 0.01)


def test_classify_alpha_zero():
    result = classify_families(1.5, 0, Parameters(1, 0, 1))
    assert result.family is Family.PARTICULAR and result.double_zero == 1.5


def test_classify_common_value(rays):
    # q is the real zero of the solution with a double zero at p = 0, so
    # the Ai and Bi conditions give the same slope there
    q, p = min(rays[:3], key=lambda r: abs(mp.im(r.location))).location.real, mp.mpf(0)
    alpha = double_zero_alpha(1, q, p)
    assert abs(alpha - double_zero_alpha(1, q, p, kind="Bi")) < 1e-25
    result = classify_families(q, alpha, Parameters(1, 0, 1), radius=2.0)
    assert result.family is Family.PARTICULAR
    assert abs(result.double_zero - p) < 1e-15


def test_classify_principal():
    result = classify_families(0, 1, Parameters(-1, -1, -0.1), radius=10.0)
    assert result.family is Family.PRINCIPAL and result.zeros_checked > 0
