"""Localisation, refinement and classification of zeros.

Real zeros are found by a sign-change scan, bisection and Newton
polishing.  Complex zeros in a disk are seeded from local re-expansions
evaluated in floating point, polished in multiprecision, and checked for
completeness against an argument-principle count.  Zeros of the
double-zero solution with b = 0 are reduced to real zeros of
1F2(1; 4/3, 5/3; x) on the negative axis.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp
import numpy as np

from .errors import (
    Inconclusive,
    IntervalMiss,
    NotASimpleZero,
    RadiusExceeded,
    ScanTooCoarse,
    ZeroOnContour,
)
from .series import (
    Parameters,
    SeriesSolution,
    principal_solution,
    recenter,
    series_covering,
    to_mp,
    value_and_derivative,
    values_fast,
    float_taylor,
    LocalExpansions,
)
from .special import Hyp1F2Args, airy_homogeneous, airy_integral, hyp1f2

__all__ = [
    "ZeroRecord",
    "ZeroInterval",
    "Family",
    "Classification",
    "polya_interval",
    "asymptotic_modulus",
    "newton_refine",
    "real_zeros",
    "argument_principle_count",
    "disk_zeros",
    "ray_zeros",
    "xi1_series",
    "xi1_hypergeometric",
    "perturbed_zero_shift",
    "perturbed_zero_shift_hypergeometric",
    "double_zero_alpha",
    "classify_families",
]


@dataclass(frozen=True)
class ZeroRecord:
    location: object
    multiplicity: int
    residual: float
    bracket: tuple | None = None
    method: str = "newton"


@dataclass(frozen=True)
class ZeroInterval:
    k: int
    lo: object
    hi: object


def polya_interval(k: int) -> ZeroInterval:
    """[(3 pi k / 2)**(2/3), (3 pi (k+1) / 2)**(2/3)], holding the k-th zero modulus of Xi(., 1, 0)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    lo = (mp.mpf(3) / 2 * mp.pi * k) ** (mp.mpf(2) / 3)
    hi = (mp.mpf(3) / 2 * mp.pi * (k + 1)) ** (mp.mpf(2) / 3)
    return ZeroInterval(k, lo, hi)


def asymptotic_modulus(k: int):
    if k < 1:
        raise ValueError("k must be >= 1")
    return (mp.mpf(3) / 2 * mp.pi * (k + mp.mpf(1) / 4)) ** (mp.mpf(2) / 3)


# ---------------------------------------------------------------- refinement

def newton_refine(series: SeriesSolution, z0, tol=None, max_iter: int = 80):
    """Polish a zero of ``series`` starting from ``z0``.

    Returns ``(location, multiplicity_hint)``.  When Newton on S stalls
    with S' also small the iterate is moved to the nearby critical point
    (Newton on S'), which is where a double zero sits.
    """
    with mp.workdps(series.precision):
        tol = mp.mpf(tol) if tol is not None else mp.mpf(10) ** (-(series.precision - 10))
        # steps this small that no longer shrink are at the cancellation floor
        floor = mp.mpf(10) ** (-(series.precision // 3))
        z = to_mp(z0)
        previous = mp.inf
        for _ in range(max_iter):
            s, ds = value_and_derivative(series, z)
            if s == 0:
                return z, 1
            if ds == 0:
                break
            step = s / ds
            scale = max(1, abs(z))
            if abs(step) <= tol * scale:
                return z - step, 1
            if abs(step) <= floor * scale and abs(step) > previous / 1.5:
                return z, 1
            z -= step
            previous = abs(step)
        # slow convergence: try the critical point
        start = z
        second = _second_derivative(series)
        for _ in range(max_iter):
            _, ds = value_and_derivative(series, z)
            d2 = mp.polyval(second, z - series.center)
            if d2 == 0:
                break
            step = ds / d2
            z -= step
            if abs(step) <= tol * max(1, abs(z)):
                return z, 2
            if abs(z - start) > 1:
                break
        return start, 1


def _second_derivative(series):
    coeffs = [n * (n - 1) * g for n, g in enumerate(series.coeffs)][2:]
    return coeffs[::-1] or [mp.mpf(0)]


def _as_series(source, radius, precision) -> SeriesSolution:
    if isinstance(source, SeriesSolution):
        if source.validity_radius < radius:
            raise RadiusExceeded(
                f"series valid to {source.validity_radius:.4g}, need {float(radius):.4g}"
            )
        return source
    if isinstance(source, Parameters):
        return principal_solution(source, radius, precision)
    raise TypeError(f"expected SeriesSolution or Parameters, got {type(source).__name__}")


# ---------------------------------------------------------------- contours

def _rectangle_count(series, x0, x1, h, min_points=64, max_points=16384):
    """Zeros inside [x0, x1] x [-h, h], by winding of S along the boundary."""
    corners = np.array([complex(x0, -h), complex(x1, -h), complex(x1, h), complex(x0, h)])
    per_edge = min_points
    while per_edge <= max_points:
        t = np.arange(per_edge) / per_edge
        path = np.concatenate([p + (q - p) * t for p, q in zip(corners, np.roll(corners, -1))])
        path = np.append(path, corners[0])
        values = values_fast(series, path)
        if np.any(values == 0):
            raise ZeroOnContour("zero on the rectangle boundary")
        jumps = np.angle(values[1:] / values[:-1])
        if np.max(np.abs(jumps)) < np.pi / 4:
            return int(round(np.sum(jumps) / (2 * np.pi)))
        per_edge *= 2
    raise ZeroOnContour("rectangle boundary passes too close to a zero")


def argument_principle_count(source, center, radius, quad_tol=1e-8, m_min: int = 6,
                             m_max: int = 16, precision: int | None = None) -> int:
    """Number of zeros (with multiplicity) of S inside the circle |z - center| = radius.

    Trapezoid rule for ``(2 pi i)**-1 \\oint S'/S dz`` on 2**m points,
    doubling until the rounded integer is reproduced twice.  Raises
    :class:`ZeroOnContour` if some sample has a Newton distance
    ``|S/S'|`` below ``quad_tol`` or the count never stabilises.
    """
    center, radius = complex(center), float(radius)
    if isinstance(source, SeriesSolution):
        series = _as_series(source, abs(center - complex(source.center)) + radius, precision)
    else:
        series = _as_series(source, abs(center) + radius, precision)
    history = []
    local = LocalExpansions(series)
    for m in range(m_min, m_max + 1):
        n_pts = 2 ** m
        w = radius * np.exp(2j * np.pi * np.arange(n_pts) / n_pts)
        s, ds = local.values(center + w, with_derivative=True)
        if np.any(s == 0):
            raise ZeroOnContour("exact zero on the contour")
        with np.errstate(all="ignore"):
            newton_dist = np.abs(s / ds)
        if np.nanmin(newton_dist) < quad_tol:
            raise ZeroOnContour(f"a zero lies within {np.nanmin(newton_dist):.3g} of the contour")
        value = np.mean(ds / s * w)
        count = int(round(value.real))
        history.append((count, abs(value - count)))
        if len(history) >= 2 and all(c == count and err < 0.05 for c, err in history[-2:]):
            return count
    raise ZeroOnContour("argument-principle count did not stabilise; a zero is near the contour")


# ---------------------------------------------------------------- real axis

def real_zeros(source, lo, hi, tol=1e-30, *, precision: int | None = None, n_scan: int = 64,
               certify: bool = True, max_halvings: int = 4) -> list[ZeroRecord]:
    """Real zeros of a real-valued solution on [lo, hi].

    ``source`` is a :class:`SeriesSolution` or :class:`Parameters` (the
    latter meaning S(0) = 0, S'(0) = deriv_norm).  Odd zeros come from
    sign changes on a uniform scan; even ones from local minima of |S|.
    With ``certify`` the count is compared against a thin-rectangle
    winding number and the scan is refined when they disagree; a
    persisting disagreement emits :class:`ScanTooCoarse`.
    """
    lo, hi = float(lo), float(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    margin = (hi - lo) / n_scan
    series = _as_series(source, max(abs(lo), abs(hi)) + margin + 1e-9 +
                        (float(abs(source.center)) if isinstance(source, SeriesSolution) else 0.0),
                        precision) if not isinstance(source, SeriesSolution) else source
    found = []
    n = n_scan
    for _ in range(max_halvings + 1):
        found = _scan(series, lo, hi, n, tol)
        if not certify:
            return found
        step = (hi - lo) / n
        x0, x1 = lo - step / 2, hi + step / 2
        outer = _scan(series, x0, lo, 1, tol) + _scan(series, hi, x1, 1, tol)
        outer = [r for r in outer if not any(abs(r.location - f.location) < 1e-12 for f in found)]
        counted = sum(r.multiplicity for r in found + outer)
        try:
            expected = _rectangle_count(series, x0, x1, step / 2)
        except ZeroOnContour:
            expected = counted
        if expected <= counted:
            return found
        n *= 2
    warnings.warn(
        f"contour count on [{lo}, {hi}] exceeds the {len(found)} zeros found by the scan",
        ScanTooCoarse,
        stacklevel=2,
    )
    return found


def _scan(series, lo, hi, n, tol) -> list[ZeroRecord]:
    with mp.workdps(series.precision):
        xs = [mp.mpf(lo) + (mp.mpf(hi) - mp.mpf(lo)) * j / n for j in range(n + 1)]
        fast = values_fast(series, np.array([float(x) for x in xs]))
        vals = [mp.mpf(float(v.real)) for v in fast]
        records = []
        for j in range(n):
            f0, f1 = vals[j], vals[j + 1]
            if f0 == 0:
                records.append(_grid_zero(series, xs[j]))
                continue
            if f0 * f1 < 0:
                records.append(_refine_bracket(series, xs[j], xs[j + 1], f0, tol))
        if n >= 2 and vals[-1] == 0:
            records.append(_grid_zero(series, xs[-1]))
        # even-multiplicity candidates: local minima of |S| without a sign change
        for j in range(1, n):
            if vals[j - 1] * vals[j] > 0 and vals[j] * vals[j + 1] > 0 and \
                    abs(vals[j]) < abs(vals[j - 1]) and abs(vals[j]) < abs(vals[j + 1]):
                rec = _even_candidate(series, xs[j - 1], xs[j + 1], tol)
                if rec is not None:
                    records.append(rec)
        records.sort(key=lambda r: r.location)
        return records


def _grid_zero(series, x) -> ZeroRecord:
    # a scan point that hits a zero exactly; it may be a double zero
    residual = float(abs(value_and_derivative(series, x)[0]))
    return ZeroRecord(x, _multiplicity(series, x, 1), residual, (x, x), "grid")


def _real_value(series, x):
    return mp.re(value_and_derivative(series, x)[0])


def _refine_bracket(series, a, b, fa, tol) -> ZeroRecord:
    bracket = (a, b)
    while b - a > 1e-3:
        m = (a + b) / 2
        fm = _real_value(series, m)
        if fm == 0:
            a = b = m
            break
        if fa * fm < 0:
            b = m
        else:
            a, fa = m, fm
    z, _ = newton_refine(series, (a + b) / 2, tol=mp.mpf(10) ** (-(series.precision - 5)))
    z = mp.re(z)
    if not bracket[0] <= z <= bracket[1]:
        # Newton escaped: finish by bisection
        while b - a > tol:
            m = (a + b) / 2
            fm = _real_value(series, m)
            if fa * fm <= 0:
                b = m
            else:
                a, fa = m, fm
        z = (a + b) / 2
    residual = abs(value_and_derivative(series, z)[0])
    return ZeroRecord(z, 1, float(residual), bracket, "bisection")


def _even_candidate(series, a, b, tol):
    z, _ = newton_refine(series, (a + b) / 2)
    with mp.workdps(series.precision):
        second = _second_derivative(series)
        w = (a + b) / 2
        for _ in range(80):
            _, ds = value_and_derivative(series, w)
            d2 = mp.polyval(second, w - series.center)
            if d2 == 0:
                return None
            step = ds / d2
            w -= step
            if abs(step) < mp.mpf(10) ** (-(series.precision - 5)):
                break
        w = mp.re(w)
        if not a <= w <= b:
            return None
        s = abs(value_and_derivative(series, w)[0])
        if s > tol:
            return None
        radius = min(1e-3, float(b - a) / 4)
        try:
            count = argument_principle_count(series, w, radius)
        except ZeroOnContour:
            return None
        if count < 2:
            return None
        return ZeroRecord(w, count, float(s), (radius,), "argument_principle")


# ---------------------------------------------------------------- complex disk

def disk_zeros(source, center, radius, tol=None, *, tile: float = 2.0, seeds: int = 4,
               precision: int | None = None) -> list[ZeroRecord]:
    """All zeros of S in |z - center| < radius, sorted by distance from ``center``.

    The disk is tiled with squares; on each the solution is re-expanded
    (in floating point, from multiprecision-checked values at the tile
    centre) and Newton is run from a seed grid.  Candidates are polished
    in multiprecision against the global series and the total is checked
    against :func:`argument_principle_count`; seed grids are densified
    when zeros are missing.
    """
    c0, r0 = complex(center), float(radius)
    if isinstance(source, SeriesSolution):
        series = source
        need = abs(c0 - complex(series.center)) + r0
        if series.validity_radius < need:
            raise RadiusExceeded(f"series valid to {series.validity_radius:.4g}, need {need:.4g}")
        if series.validity_radius < need + 0.75 * tile:
            # tile centres reach beyond the disk
            series = recenter(series, series.center, radius=need + 0.75 * tile)
    else:
        series = _as_series(source, abs(c0) + r0 + 0.75 * tile, precision)
    with mp.workdps(series.precision):
        center, radius = to_mp(center), to_mp(radius)
        tol = mp.mpf(tol) if tol is not None else mp.mpf(10) ** (-(series.precision // 2))
        expected = argument_principle_count(series, c0, r0)
        if expected == 0:
            return []
        tiles = _Tiles(series, c0, r0, tile)
        found: list[ZeroRecord] = []
        rejected: list[complex] = []
        for n_seed in (seeds, 2 * seeds + 1, 4 * seeds + 1):
            candidates = tiles.candidates(n_seed)
            found = _polish_candidates(series, candidates, found, rejected, center, radius, tol)
            if sum(r.multiplicity for r in found) >= expected:
                break
        total = sum(r.multiplicity for r in found)
        if total != expected:
            raise Inconclusive(f"found {total} zeros in the disk, argument principle counts {expected}")
        return sorted(found, key=lambda r: (float(abs(r.location - center)), float(mp.arg(r.location - center))))


class _Tiles:
    """Square tiles covering a disk, each with a float Taylor expansion."""

    def __init__(self, series: SeriesSolution, center: complex, radius: float, tile: float, order: int = 48):
        n_side = int(math.ceil(2 * radius / tile))
        offsets = (np.arange(n_side) + 0.5) * tile - n_side * tile / 2
        grid = center + offsets[None, :] + 1j * offsets[:, None]
        self.centers = grid[np.abs(grid - center) <= radius + tile * 0.71].ravel()
        self.tile = tile
        values, slopes = values_fast(series, self.centers, with_derivative=True)
        with mp.workdps(series.precision):
            triple = series.params.triple()
        self.expansions = [_normalised(float_taylor(triple, z0, y0, y1, order))
                           for z0, y0, y1 in zip(self.centers, values, slopes)]

    def candidates(self, n_seed: int) -> list[complex]:
        grid = ((np.arange(n_seed) + 0.5) / n_seed - 0.5) * self.tile
        seeds = (grid[None, :] + 1j * grid[:, None]).ravel()
        out = []
        for z0, coeffs in zip(self.centers, self.expansions):
            out += [z0 + w for w in _float_newton(coeffs, seeds, self.tile)]
        return out


def _normalised(g):
    scale = np.max(np.abs(g))
    return g / scale if scale > 0 and np.isfinite(scale) else None


def _float_newton(coeffs, seeds, tile: float):
    if coeffs is None:
        return []
    p = coeffs[::-1]
    dp = np.polyder(p)
    w = seeds.astype(complex)
    with np.errstate(all="ignore"):
        for _ in range(40):
            step = np.polyval(p, w) / np.polyval(dp, w)
            step[~np.isfinite(step)] = 0
            w = w - step
            w[np.abs(w) > 1.5 * tile] = np.nan
        # roots of the truncation outside the tile are left to neighbouring tiles
        inside = (np.abs(w.real) <= 0.55 * tile) & (np.abs(w.imag) <= 0.55 * tile)
        ok = np.isfinite(w) & inside & (np.abs(np.polyval(p, w)) < 1e-8)
    return list(w[ok])


def _polish_candidates(series, candidates, found, rejected, center, radius, tol):
    found = list(found)
    for cand in candidates:
        if any(abs(cand - complex(r.location)) < 1e-6 for r in found):
            continue
        if any(abs(cand - r) < 1e-6 for r in rejected):
            continue
        try:
            z, hint = newton_refine(series, mp.mpc(cand))
            s, ds = value_and_derivative(series, z)
        except RadiusExceeded:
            rejected.append(cand)
            continue
        if abs(z - center) >= radius or abs(s) > tol * max(1, abs(ds)):
            rejected.append(cand)
            continue
        if any(abs(z - r.location) < mp.mpf(10) ** (-(series.precision // 3)) for r in found):
            rejected.append(cand)
            continue
        multiplicity = _multiplicity(series, z, hint)
        found.append(ZeroRecord(z, multiplicity, float(abs(s)), None, "newton"))
    return found


def _multiplicity(series, z, hint) -> int:
    """1 unless S' is small there, in which case a tiny disk is counted."""
    s, ds = value_and_derivative(series, z)
    second = abs(mp.polyval(_second_derivative(series), z - series.center))
    if hint < 2 and abs(ds) > mp.mpf(10) ** -8 * max(1, second):
        return 1
    for rho in (1e-4, 1e-6):
        try:
            return max(1, argument_principle_count(series, z, rho))
        except ZeroOnContour:
            continue
    return hint


# ---------------------------------------------------------------- b = 0 rays

_F_DZ0 = Hyp1F2Args(1, Fraction(4, 3), Fraction(5, 3))


def ray_zeros(a=1, max_k: int = 10, tol=1e-40, precision: int = 60, polish: bool = True) -> list[ZeroRecord]:
    """Zero triples of Xi(., a, 0) for k = 1..max_k.

    Moduli are the real roots, one per Polya interval, of
    ``1F2(1; 4/3, 5/3; -r**3/9)``; the three locations solve
    ``a z**3 / 9 = -r**3/9``.  With ``polish`` each location is refined
    by complex Newton on the Taylor series of Xi, independently of the
    ray construction.
    """
    with mp.workdps(precision):
        a = to_mp(a)
        scale = abs(a) ** (-mp.mpf(1) / 3)

        def f(r):
            return hyp1f2(_F_DZ0, -r ** 3 / 9, precision)

        series = None
        if polish:
            reach = float(polya_interval(max_k).hi * scale) + 1.0
            series = series_covering(Parameters(a, 0, 1), 0, 0, 0, reach, precision)
        records = []
        for k in range(1, max_k + 1):
            iv = polya_interval(k)
            flo, fhi = f(iv.lo), f(iv.hi)
            if flo * fhi > 0:
                raise IntervalMiss(f"no sign change of 1F2 in Polya interval k={k}")
            r = _bisect_secant(f, iv.lo, iv.hi, flo, fhi, mp.mpf(tol))
            x = -r ** 3 / 9
            base = mp.mpc(9 * x / a) ** (mp.mpf(1) / 3)
            for j in range(3):
                z = base * mp.expjpi(mp.mpf(2 * j) / 3)
                method = "bisection"
                if polish:
                    z, _ = newton_refine(series, z)
                    method = "newton"
                    residual = abs(value_and_derivative(series, z)[0])
                else:
                    residual = mp.mpf(0)
                records.append(ZeroRecord(z, 1, float(residual), (iv.lo * scale, iv.hi * scale), method))
        return records


def _bisect_secant(f, lo, hi, flo, fhi, tol):
    """Illinois-modified regula falsi on a sign-change bracket."""
    a, b, fa, fb = lo, hi, flo, fhi
    x = (a + b) / 2
    for _ in range(500):
        x = (a * fb - b * fa) / (fb - fa)
        fx = f(x)
        if fx == 0:
            return x
        if fx * fb < 0:
            a, fa = b, fb
        else:
            fa /= 2
        b, fb = x, fx
        if abs(b - a) < tol * max(1, abs(x)):
            return x
    return x


# ---------------------------------------------------------------- perturbation in b

def _xi1_terms(z, a):
    """Power series of Xi_1(z, a) = d/db Xi(z, a, b) at b = 0."""
    coeff_a = mp.mpf(1) / 8            # 3**(n+1) (n+1)! / (3n+4)!
    coeff_b = mp.mpf(1) / 12           # 1 / (3**(n+1) (n+1)! prod_{k<=n+1} (3k+1))
    power = z ** 4
    az3 = a * z ** 3
    n = 0
    while True:
        yield (coeff_a - coeff_b) * power
        coeff_a *= mp.mpf(3 * (n + 2)) / ((3 * n + 5) * (3 * n + 6) * (3 * n + 7))
        coeff_b /= 3 * (n + 2) * (3 * n + 7)
        power *= az3
        n += 1


def xi1_series(z, a, precision: int = 50):
    """First-order coefficient in b of Xi(z, a, b), summed from its power series."""
    with mp.workdps(precision):
        z, a = to_mp(z), to_mp(a)
        guard = int(float(abs(a) ** 0.5 * abs(z) ** 1.5) / 3) + 10
    with mp.workdps(precision + guard):
        z, a = to_mp(z), to_mp(a)
        total = mp.mpf(0)
        eps = mp.mpf(10) ** (-(precision + guard))
        peak = mp.mpf(0)
        for n, term in enumerate(_xi1_terms(z, a)):
            total += term
            peak = max(peak, abs(term))
            if n > 3 and abs(term) < eps * max(peak, 1):
                break
    with mp.workdps(precision):
        return +total


def xi1_hypergeometric(z, a, precision: int = 50):
    """Xi_1 as z**4/8 1F2(1; 5/3, 7/3; a z**3/9) - z**4/12 1F2(1; 2, 7/3; a z**3/9)."""
    with mp.workdps(precision + 5):
        z, a = to_mp(z), to_mp(a)
        x = a * z ** 3 / 9
        f1 = hyp1f2(Hyp1F2Args(1, Fraction(5, 3), Fraction(7, 3)), x, precision + 5)
        f2 = hyp1f2(Hyp1F2Args(1, 2, Fraction(7, 3)), x, precision + 5)
        value = z ** 4 / 8 * f1 - z ** 4 / 12 * f2
    with mp.workdps(precision):
        return +value


def _xi0_derivative(xi0, a, precision):
    series = series_covering(Parameters(a, 0, 1), 0, 0, 0, float(abs(xi0)) + 0.5, precision)
    return value_and_derivative(series, xi0)[1]


def perturbed_zero_shift(xi0, a, b_small, precision: int = 50, tol=1e-20):
    """First-order displacement ``-b Xi_1(xi0, a) / Xi_0'(xi0, a)`` of a zero of Xi(., a, 0)."""
    with mp.workdps(precision):
        xi0, a, b_small = to_mp(xi0), to_mp(a), to_mp(b_small)
        slope = _xi0_derivative(xi0, a, precision)
        if abs(slope) < tol:
            raise NotASimpleZero(f"|Xi_0'| = {mp.nstr(abs(slope), 3)} at {mp.nstr(xi0, 10)}")
        return -b_small * xi1_series(xi0, a, precision) / slope


def perturbed_zero_shift_hypergeometric(xi0, a, b_small, precision: int = 50):
    """Same displacement written with three 1F2 functions of a xi0**3 / 9."""
    with mp.workdps(precision + 5):
        xi0, a, b_small = to_mp(xi0), to_mp(a), to_mp(b_small)
        x = a * xi0 ** 3 / 9
        f1 = hyp1f2(Hyp1F2Args(1, Fraction(5, 3), Fraction(7, 3)), x, precision + 5)
        f2 = hyp1f2(Hyp1F2Args(1, 2, Fraction(7, 3)), x, precision + 5)
        g = hyp1f2(Hyp1F2Args(2, Fraction(7, 3), Fraction(8, 3)), x, precision + 5)
        value = -5 * b_small / (9 * a) * (3 * f1 - 2 * f2) / g
    with mp.workdps(precision):
        return +value


# ---------------------------------------------------------------- families

class Family(str, enum.Enum):
    PRINCIPAL = "principal"
    PARTICULAR = "particular"


@dataclass(frozen=True)
class Classification:
    family: Family
    double_zero: object | None
    region_radius: float
    zeros_checked: int


def double_zero_alpha(c, q, p, kind: str = "Ai", precision: int = 50):
    """Slope at q of the a=1, b=0 solution that vanishes at q and has a double zero at p.

    From the Airy-function representation, ``alpha Ai(q) + c int_q^p Ai = 0``
    (and the same with Bi), so ``alpha = -c int_q^p Ai / Ai(q)``.
    """
    with mp.workdps(precision):
        c = to_mp(c)
        integral = airy_integral(kind, q, p, tol=mp.mpf(10) ** (-(precision - 5)), precision=precision)
        return -c * integral / airy_homogeneous(kind, q, precision)


def classify_families(q, alpha, params: Parameters, radius: float = 10.0,
                      precision: int = 50) -> Classification:
    """Principal or particular: does the solution through y(q)=0, y'(q)=alpha have a double zero?

    The search covers |z| < radius only; a principal verdict means no
    double zero there.  Raises :class:`Inconclusive` when the disk search
    cannot be completed.
    """
    with mp.workdps(precision):
        q, alpha = to_mp(q), to_mp(alpha)
        if alpha == 0:
            return Classification(Family.PARTICULAR, q, float(radius), 0)
        series = series_covering(params, q, 0, alpha, float(abs(q)) + radius + 0.5, precision)
        try:
            zeros = disk_zeros(series, 0, radius)
        except ZeroOnContour as exc:
            raise Inconclusive(str(exc)) from exc
        doubles = [r for r in zeros if r.multiplicity >= 2]
        if doubles:
            return Classification(Family.PARTICULAR, doubles[0].location, float(radius), len(zeros))
        return Classification(Family.PRINCIPAL, None, float(radius), len(zeros))
