"""Maps between solutions and the identities they satisfy.

If y solves ``y'' = (a z + b') y + c'`` then ``A y(z - B)`` solves the
equation with parameters ``(a, b' - a B, A c')``.  Read the other way,
a solution for (a, b, c) is obtained from a source solution for
``(a, b + a B, c / A)``; :func:`map_params` gives that source triple.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp

from .errors import DegenerateA, ZeroSetMismatch
from .quadrature import adaptive_gauss
from .series import (
    Parameters,
    SeriesSolution,
    double_zero_solution,
    principal_solution,
    series_covering,
    to_mp,
    value_and_derivative,
)
from .zeros import disk_zeros

__all__ = [
    "TransformSpec",
    "map_params",
    "transform_series",
    "apply_transform",
    "identity_transform_residual",
    "QuasiPeriodicityReport",
    "verify_quasi_periodicity",
    "HomogeneityReport",
    "verify_homogeneity",
    "energy_identity_residual",
    "interval_energy",
]


@dataclass(frozen=True)
class TransformSpec:
    """The map y -> A y(z - B)."""

    A: object = 1
    B: object = 0

    def compose(self, after: "TransformSpec") -> "TransformSpec":
        """``after`` applied to the result of ``self``."""
        return TransformSpec(to_mp(self.A) * to_mp(after.A), to_mp(self.B) + to_mp(after.B))


def map_params(spec: TransformSpec, params: Parameters) -> Parameters:
    """Source parameters (a, b + a B, c / A) whose transform solves ``params``."""
    a, b, c = params.triple()
    A, B = to_mp(spec.A), to_mp(spec.B)
    if A == 0:
        raise DegenerateA("A = 0 has no source parameters")
    return Parameters(a, b + a * B, c / A, params.deriv_norm)


def transform_series(spec: TransformSpec, series: SeriesSolution) -> SeriesSolution:
    """The series of ``A y(z - B)``, centred at ``center + B``."""
    with mp.workdps(series.precision):
        A, B = to_mp(spec.A), to_mp(spec.B)
        if A == 0:
            raise DegenerateA("A = 0 annihilates the solution")
        a, b, c = series.params.triple()
        params = Parameters(a, b - a * B, A * c, series.params.deriv * A)
        return SeriesSolution(params, series.center + B, tuple(A * g for g in series.coeffs),
                              series.precision, series.family_tag, series.derivative_order)


def apply_transform(spec: TransformSpec, params: Parameters, source: SeriesSolution | None, *,
                    degenerate: bool = False, radius: float = 4.0, precision: int = 50) -> SeriesSolution:
    """Solution of ``params`` obtained as A * source(z - B).

    ``source`` must solve the equation with :func:`map_params` of
    ``params``.  With A = 0 and ``degenerate`` set the limit is returned:
    only the part proportional to c survives, which is the solution of
    ``params`` with a double zero at B.
    """
    with mp.workdps(source.precision if source is not None else precision):
        if to_mp(spec.A) == 0:
            if not degenerate:
                raise DegenerateA("A = 0 needs degenerate=True")
            return double_zero_solution(params, radius, center=to_mp(spec.B), precision=precision)
        expected = map_params(spec, params).triple()
        if any(abs(x - y) > mp.mpf(10) ** (-(source.precision - 10)) * max(1, abs(y))
               for x, y in zip(source.params.triple(), expected)):
            raise ValueError("source does not solve the mapped equation (a, b + a B, c / A)")
        return transform_series(spec, source)


def identity_transform_residual(params: Parameters, xi_m, xi_n, points, precision: int = 40) -> float:
    """Max |S - T_{A,B} S~| over ``points`` for B = xi_n - xi_m, A = S'(xi_n)/S'(xi_m).

    S is the solution with S(0) = 0, S'(0) = deriv_norm; xi_m and xi_n are
    two of its zeros.  S~ solves the mapped equation with the same data
    at xi_m as S, so the transform must reproduce S itself.
    """
    with mp.workdps(precision):
        xi_m, xi_n = to_mp(xi_m), to_mp(xi_n)
        points = [to_mp(z) for z in points]
        reach = max(abs(z) for z in points + [xi_m, xi_n]) + 1
        S = principal_solution(params, reach, precision)
        _, dm = value_and_derivative(S, xi_m)
        _, dn = value_and_derivative(S, xi_n)
        spec = TransformSpec(dn / dm, xi_n - xi_m)
        source_params = map_params(spec, params)
        far = max(abs(z - spec.B - xi_m) for z in points) + 1
        source = series_covering(source_params, xi_m, 0, dm, far, precision)
        image = apply_transform(spec, params, source)
        return float(max(abs(value_and_derivative(S, z)[0] - value_and_derivative(image, z)[0]) for z in points))


# ---------------------------------------------------------------- quasi-periodicity

@dataclass(frozen=True)
class QuasiPeriodicityReport:
    shift: object
    scale: object
    max_distance: float
    compared: int
    excluded: int


def _order_key(z):
    # ties in modulus are broken towards the positive real direction
    return (round(float(abs(z)), 10), -float(mp.re(z)), -float(mp.im(z)))


def _nonzero(records, eps):
    return sorted((r.location for r in records if abs(r.location) > eps), key=_order_key)


def verify_quasi_periodicity(params: Parameters, n: int = 1, K: int = 3, tol: float = 1e-20,
                             precision: int = 40, radius: float | None = None) -> QuasiPeriodicityReport:
    """Compare the zeros of the re-parameterised solution with the shifted zero set.

    xi_n is the n-th nonzero zero of S by modulus.  The solution with
    parameters (a, b + a xi_n, c / A_n), A_n = S'(xi_n)/S'(0), and the same
    derivative at 0 must vanish exactly at {xi_k - xi_n}.  Its first K
    nonzero zeros are matched greedily to the shifted set; shifted zeros
    within the same modulus are all required to be matched, those
    further out (the boundary band of width |xi_n|) are excluded.
    """
    if n < 1 or K < 1:
        raise ValueError("n and K must be positive")
    radius = radius or 6.0
    with mp.workdps(precision):
        eps = mp.mpf(10) ** (-(precision // 2))
        for _ in range(8):
            S = principal_solution(params, radius + 1, precision)
            zeros = _nonzero(disk_zeros(S, 0, radius), eps)
            if len(zeros) < n:
                radius *= 1.5
                continue
            shift = zeros[n - 1]
            inner = radius - float(abs(shift))
            _, d0 = value_and_derivative(S, 0)
            _, dn = value_and_derivative(S, shift)
            scale = dn / d0
            a, b, c = params.triple()
            moved = Parameters(a, b + a * shift, c / scale, d0)
            images = _nonzero(disk_zeros(principal_solution(moved, inner + 1, precision), 0, inner * 0.95), eps)
            if len(images) >= K:
                break
            radius *= 1.5
        if len(images) < K:
            raise ZeroSetMismatch(f"only {len(images)} zeros of the moved solution in the window")
        # zeros tied in modulus with the K-th are compared as well
        edge = _order_key(images[K - 1])[0]
        images = [z for z in images if _order_key(z)[0] <= edge]
        shifted = [z - shift for z in zeros + [mp.mpf(0)]]
        reach = abs(images[-1]) * (1 + 1e-9)
        required = [z for z in shifted if eps < abs(z) <= reach]
        pool = list(shifted)
        worst = mp.mpf(0)
        for z in images:
            nearest = min(pool, key=lambda w: abs(w - z))
            worst = max(worst, abs(nearest - z))
            pool.remove(nearest)
        unmatched = [z for z in required if z in pool]
        if unmatched or worst > tol:
            raise ZeroSetMismatch(f"max distance {mp.nstr(worst, 5)}, {len(unmatched)} shifted zeros unmatched")
        excluded = sum(1 for z in shifted if abs(z) > reach)
        return QuasiPeriodicityReport(shift, scale, float(worst), len(images), excluded)


# ---------------------------------------------------------------- homogeneity

@dataclass(frozen=True)
class HomogeneityReport:
    max_residual: float
    points: int
    passed: bool


def verify_homogeneity(a, b, lam, points, tol: float = 1e-30, precision: int = 40) -> HomogeneityReport:
    """Check Xi(z / lam, lam**3 a, lam**2 b) = lam**-2 Xi(z, a, b) at ``points``.

    Xi is the solution with c = 1 and a double zero at the origin.  The
    residual is relative to max(1, |rhs|).
    """
    with mp.workdps(precision):
        a, b, lam = to_mp(a), to_mp(b), to_mp(lam)
        if lam == 0:
            raise ValueError("lambda must be nonzero")
        points = [to_mp(z) for z in points]
        reach = max(abs(z) for z in points)
        base = double_zero_solution(Parameters(a, b, 1), reach + 0.5, precision=precision)
        scaled = double_zero_solution(Parameters(lam ** 3 * a, lam ** 2 * b, 1),
                                      reach / abs(lam) + 0.5, precision=precision)
        worst = mp.mpf(0)
        for z in points:
            lhs = value_and_derivative(scaled, z / lam)[0]
            rhs = value_and_derivative(base, z)[0] / lam ** 2
            worst = max(worst, abs(lhs - rhs) / max(1, abs(rhs)))
        return HomogeneityReport(float(worst), len(points), bool(worst <= tol))


# ---------------------------------------------------------------- energy identity

def _double_zero_real(a, b, c, reach, precision):
    for x in (a, b, c):
        if mp.im(to_mp(x)) != 0:
            raise ValueError("the energy identity is checked for real parameters only")
    return double_zero_solution(Parameters(a, b, c), reach + 0.5, precision=precision)


def energy_identity_residual(a, b, c, z, quad_tol: float = 1e-20, precision: int = 50) -> float:
    """|y'^2 - (a z + b) y^2 - 2 c y + a int_0^z y^2| for the double-zero solution y.

    y solves y'' = (a z + b) y + c with y(0) = y'(0) = 0 (that is, c times
    the c = 1 solution); z is real.
    """
    with mp.workdps(precision):
        a, b, c, z = to_mp(a), to_mp(b), to_mp(c), to_mp(z)
        if mp.im(z) != 0:
            raise ValueError("z must be real")
        y = _double_zero_real(a, b, c, abs(z), precision)
        value, slope = value_and_derivative(y, z)
        integral = adaptive_gauss(lambda x: value_and_derivative(y, x)[0] ** 2, 0, z, quad_tol, dps=precision)
        return float(abs(slope ** 2 - (a * z + b) * value ** 2 - 2 * c * value + a * integral))


def interval_energy(a, b, p, quad_tol: float = 1e-20, precision: int = 50):
    """int of Xi**2 over the interval between 0 and p (c = 1, real a and b).

    Positive for every real p != 0, so Xi' and Xi cannot vanish together
    at a second real point.
    """
    with mp.workdps(precision):
        p = to_mp(p)
        y = _double_zero_real(a, b, 1, abs(p), precision)
        lo, hi = (p, mp.mpf(0)) if p < 0 else (mp.mpf(0), p)
        return adaptive_gauss(lambda x: value_and_derivative(y, x)[0] ** 2, lo, hi, quad_tol, dps=precision)
