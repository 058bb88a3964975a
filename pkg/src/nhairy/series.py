"""Taylor-series solutions of y'' = (a z + b) y + c.

Every solution is entire, so a series about any center converges
everywhere; a *truncated* series does not.  :func:`evaluate` therefore
checks a tail criterion and raises :class:`RadiusExceeded` instead of
returning an inaccurate value.  Callers re-center with :func:`recenter`
or :func:`continue_to`.

All arithmetic is mpmath at the precision (decimal digits) carried by
each :class:`SeriesSolution`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import mpmath as mp
import numpy as np

from .errors import RadiusExceeded

__all__ = [
    "Parameters",
    "SeriesSolution",
    "EvalResult",
    "build_series",
    "evaluate",
    "value_and_derivative",
    "values_fast",
    "float_taylor",
    "LocalExpansions",
    "derivative",
    "residual_check",
    "series_covering",
    "recenter",
    "continue_to",
    "principal_solution",
    "double_zero_solution",
    "working_precision",
]

DOUBLE_ZERO = "double_zero"
SIMPLE_ZERO = "simple_zero"
GENERAL = "general"

MIN_ORDER = 4
MIN_PRECISION = 30
# the tail must drop below 10**(-precision + TAIL_SLACK) relative to max(1, |value|)
TAIL_SLACK = 10


def to_mp(x):
    """Convert numbers and numeric strings to mpf/mpc at the current precision."""
    return mp.mpmathify(x.strip().replace("i", "j") if isinstance(x, str) else x)


def working_precision(order: int, digits: int = 15) -> int:
    """Default working precision: ``max(50, digits + order/10)``."""
    return max(50, int(digits + order // 10))


@dataclass(frozen=True)
class Parameters:
    """Coefficients of y'' = (a z + b) y + c plus the normalisation y'(0)."""

    a: object = 1
    b: object = 0
    c: object = 0
    deriv_norm: object = 1

    def __post_init__(self):
        for name in ("a", "b", "c", "deriv_norm"):
            raw = getattr(self, name)
            if isinstance(raw, str):
                raw = raw.strip().replace("i", "j")
                object.__setattr__(self, name, raw)
            if not mp.isfinite(to_mp(raw)):
                raise ValueError(f"parameter {name} must be finite, got {raw}")

    def triple(self):
        """(a, b, c) as mp numbers at the current working precision."""
        return to_mp(self.a), to_mp(self.b), to_mp(self.c)

    @property
    def deriv(self):
        return to_mp(self.deriv_norm)

    def replace(self, **changes) -> "Parameters":
        values = dict(a=self.a, b=self.b, c=self.c, deriv_norm=self.deriv_norm)
        values.update(changes)
        return Parameters(**values)


@dataclass(frozen=True)
class EvalResult:
    value: object
    abs_error_bound: float
    terms_used: int


@dataclass(frozen=True)
class SeriesSolution:
    """Truncated Taylor series ``sum g_n (z - center)**n`` of one solution.

    ``derivative_order`` counts how many times the series has been
    differentiated; only the undifferentiated series solves the ODE.
    """

    params: Parameters
    center: object
    coeffs: tuple
    precision: int
    family_tag: str = GENERAL
    derivative_order: int = 0
    _horner: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_horner", tuple(reversed(self.coeffs)))

    @property
    def truncation_order(self) -> int:
        return len(self.coeffs) - 1

    @cached_property
    def log10_abs(self) -> np.ndarray:
        return np.array([_log10_abs(g) for g in self.coeffs])

    @cached_property
    def validity_radius(self) -> float:
        """Largest |z - center| at which the last terms stay below 10**(-precision + 10)."""
        target = -self.precision + TAIL_SLACK
        start = max(0, len(self.coeffs) - 3)
        radii = []
        for n in range(start, len(self.coeffs)):
            lg = _log10_abs(self.coeffs[n])
            if n > 0 and np.isfinite(lg):
                radii.append(10.0 ** ((target - lg) / n))
        return min(radii) if radii else math.inf

    @cached_property
    def float_coeffs(self) -> np.ndarray:
        with mp.workdps(self.precision):
            return np.array([complex(g) for g in self.coeffs])

    def __call__(self, z):
        return evaluate(self, z).value


_LOG10_2 = math.log10(2.0)


def _log10_abs(x) -> float:
    if x == 0:
        return -math.inf
    mantissa, exponent = mp.frexp(abs(x))
    return math.log10(float(mantissa)) + exponent * _LOG10_2


def _family(y0, y1) -> str:
    if y0 == 0 and y1 == 0:
        return DOUBLE_ZERO
    if y0 == 0:
        return SIMPLE_ZERO
    return GENERAL


def build_series(params: Parameters, center, y0, y1, order: int, precision: int | None = None) -> SeriesSolution:
    """Taylor coefficients g_0..g_N of the solution with y(center)=y0, y'(center)=y1.

    Uses ``g2 = (B g0 + c)/2``, ``g3 = (B g1 + a g0)/6`` and
    ``g_{n+2} = (B g_n + a g_{n-1}) / ((n+1)(n+2))`` with ``B = a*center + b``.
    """
    order = int(order)
    if order < MIN_ORDER:
        raise ValueError(f"order must be >= {MIN_ORDER}, got {order}")
    if precision is None:
        precision = working_precision(order)
    if precision < MIN_PRECISION:
        raise ValueError(f"precision must be >= {MIN_PRECISION} digits, got {precision}")
    with mp.workdps(precision):
        center, y0, y1 = to_mp(center), to_mp(y0), to_mp(y1)
        for name, value in (("center", center), ("y0", y0), ("y1", y1)):
            if not mp.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
        a, b, c = params.triple()
        shift = a * center + b
        g = [y0, y1, (shift * y0 + c) / 2, (shift * y1 + a * y0) / 6]
        for n in range(2, order - 1):
            g.append((shift * g[n] + a * g[n - 1]) / ((n + 1) * (n + 2)))
        g = g[: order + 1]
    return SeriesSolution(params, center, tuple(g), int(precision), _family(y0, y1))


def _check_radius(series: SeriesSolution, w):
    if abs(w) > series.validity_radius:
        raise RadiusExceeded(
            f"|z - center| = {mp.nstr(abs(w), 6)} exceeds validity radius "
            f"{series.validity_radius:.6g} at order {series.truncation_order}"
        )


def evaluate(series: SeriesSolution, z) -> EvalResult:
    """Sum the series at ``z`` with a truncation-plus-rounding error bound."""
    with mp.workdps(series.precision):
        w = to_mp(z) - series.center
        value = mp.polyval(series._horner, w) if w != 0 else series.coeffs[0]
        n_terms = len(series.coeffs)
        logs = series.log10_abs
        if w == 0:
            tail_log = -math.inf
            max_log = logs[0]
        else:
            lw = float(mp.log10(abs(w)))
            term_logs = logs + lw * np.arange(n_terms)
            tail_log = float(np.max(term_logs[-3:]))
            max_log = float(np.max(term_logs))
        scale = max(1.0, float(abs(value)))
        if tail_log - math.log10(scale) >= -series.precision + TAIL_SLACK:
            raise RadiusExceeded(
                f"tail 10^{tail_log:.1f} too large at |z - center| = {mp.nstr(abs(w), 6)} "
                f"(order {series.truncation_order}, {series.precision} digits)"
            )
        tail = 0.0 if tail_log == -math.inf else 2.0 * 10.0 ** tail_log
        rounding = 0.0 if max_log == -math.inf else n_terms * 10.0 ** (max_log - series.precision)
    return EvalResult(value, tail + rounding, n_terms)


def value_and_derivative(series: SeriesSolution, z, check: bool = True):
    """(S(z), S'(z)) by one Horner pass; cheaper than two :func:`evaluate` calls."""
    with mp.workdps(series.precision):
        w = to_mp(z) - series.center
        if check:
            _check_radius(series, w)
        return mp.polyval(series._horner, w, derivative=True)


def _horner_with_bound(coeffs, w, with_derivative):
    """Float Horner pass; also flags points whose value is not above rounding noise."""
    aw = np.abs(w)
    value = np.zeros_like(w)
    slope = np.zeros_like(w)
    bound = np.zeros(w.shape)
    dbound = np.zeros(w.shape)
    with np.errstate(all="ignore"):
        for g in coeffs[::-1]:
            slope = slope * w + value
            dbound = dbound * aw + bound
            value = value * w + g
            bound = bound * aw + abs(g)
        eps = 8 * len(coeffs) * np.finfo(float).eps
        bad = ~np.isfinite(value) | ~np.isfinite(slope) | (np.abs(value) <= 1e3 * eps * bound)
        if with_derivative:
            bad |= np.abs(slope) <= 1e3 * eps * dbound
    return value, slope, bad


def _fill_exact(series, zs, value, slope, bad):
    for idx in np.flatnonzero(bad):
        v, d = value_and_derivative(series, mp.mpc(zs.flat[idx]), check=False)
        value.flat[idx] = complex(v) if v != 0 else 0j
        slope.flat[idx] = complex(d)


def values_fast(series: SeriesSolution, zs, with_derivative: bool = False):
    """Vectorised complex128 evaluation with a running rounding bound.

    Points where the floating-point value is not clearly larger than its
    rounding bound are recomputed in multiprecision, so signs and
    arguments of the returned values can be trusted.
    """
    zs = np.asarray(zs, dtype=complex)
    w = zs - complex(series.center)
    if np.any(np.abs(w) > series.validity_radius):
        raise RadiusExceeded(f"points beyond validity radius {series.validity_radius:.6g}")
    value, slope, bad = _horner_with_bound(series.float_coeffs, w, with_derivative)
    _fill_exact(series, zs, value, slope, bad)
    return (value, slope) if with_derivative else value


def float_taylor(params_triple, z0, y0, y1, order: int = 48) -> np.ndarray:
    """complex128 Taylor coefficients about ``z0`` of the solution with data (y0, y1)."""
    a, b, c = (complex(x) for x in params_triple)
    shift = a * z0 + b
    g = [y0, y1, (shift * y0 + c) / 2, (shift * y1 + a * y0) / 6]
    for n in range(2, order - 1):
        g.append((shift * g[n] + a * g[n - 1]) / ((n + 1) * (n + 2)))
    return np.array(g[:order], dtype=complex)


class LocalExpansions:
    """Fast evaluation of a solution through float expansions about grid anchors.

    Anchors sit on a square grid of the given ``spacing``; the solution
    and its derivative are obtained at each anchor once (through
    :func:`values_fast`, hence exactly where cancellation demands it) and
    a float Taylor expansion is used for nearby points.  Points whose
    value is not above rounding noise are recomputed in multiprecision.
    """

    def __init__(self, series: SeriesSolution, spacing: float | None = None, order: int = 48):
        if series.derivative_order:
            raise ValueError("local expansions need a solution series, not a derivative")
        self.series = series
        self.order = order
        self._expansions: dict[tuple[int, int], np.ndarray] = {}
        with mp.workdps(series.precision):
            self._triple = tuple(complex(x) for x in series.params.triple())
        if spacing is None:
            # keep (local wavenumber) * (distance to anchor) of order one
            a, b, _ = self._triple
            reach = abs(complex(series.center)) + min(series.validity_radius, 1e6)
            wavenumber = max(1.0, math.sqrt(abs(a) * reach + abs(b)), abs(a) ** (1 / 3))
            spacing = min(1.0, 3.0 / wavenumber)
        self.spacing = spacing

    def _anchor_keys(self, zs):
        return np.round(zs.real / self.spacing).astype(int), np.round(zs.imag / self.spacing).astype(int)

    def anchor(self, key) -> complex:
        z = complex(key[0] * self.spacing, key[1] * self.spacing)
        # pull anchors back inside the disk of validity (projection keeps them close)
        center = complex(self.series.center)
        limit = 0.999 * self.series.validity_radius
        if abs(z - center) > limit:
            z = center + (z - center) * (limit / abs(z - center))
        return z

    def expansion(self, key) -> np.ndarray:
        return self._prepare([key])[key]

    def _prepare(self, keys):
        missing = [k for k in dict.fromkeys(keys) if k not in self._expansions]
        if missing:
            anchors = np.array([self.anchor(k) for k in missing])
            values, slopes = values_fast(self.series, anchors, with_derivative=True)
            for k, z0, y0, y1 in zip(missing, anchors, values, slopes):
                self._expansions[k] = float_taylor(self._triple, z0, y0, y1, self.order)
        return self._expansions

    def values(self, zs, with_derivative: bool = False):
        zs = np.asarray(zs, dtype=complex)
        kx, ky = self._anchor_keys(zs.ravel())
        keys = list(zip(kx.tolist(), ky.tolist()))
        table = self._prepare(keys)
        value = np.empty(zs.size, dtype=complex)
        slope = np.empty(zs.size, dtype=complex)
        bad = np.zeros(zs.size, dtype=bool)
        groups: dict[tuple[int, int], list[int]] = {}
        for i, k in enumerate(keys):
            groups.setdefault(k, []).append(i)
        for k, idx in groups.items():
            idx = np.array(idx)
            w = zs.ravel()[idx] - self.anchor(k)
            v, d, b = _horner_with_bound(table[k], w, with_derivative)
            value[idx], slope[idx], bad[idx] = v, d, b
        flat = zs.ravel()
        _fill_exact(self.series, flat, value, slope, bad)
        value, slope = value.reshape(zs.shape), slope.reshape(zs.shape)
        return (value, slope) if with_derivative else value


def derivative(series: SeriesSolution) -> SeriesSolution:
    coeffs = tuple((n + 1) * g for n, g in enumerate(series.coeffs[1:]))
    return SeriesSolution(
        series.params,
        series.center,
        coeffs,
        series.precision,
        GENERAL,
        series.derivative_order + 1,
    )


def residual_check(series: SeriesSolution, z):
    """|y'' - (a z + b) y - c| at ``z``."""
    if series.derivative_order:
        raise ValueError("residual_check needs an undifferentiated solution series")
    value = evaluate(series, z).value
    with mp.workdps(series.precision):
        w = to_mp(z) - series.center
        second = [n * (n - 1) * g for n, g in enumerate(series.coeffs)][2:]
        ypp = mp.polyval(second[::-1], w) if second else mp.mpf(0)
        a, b, c = series.params.triple()
        return abs(ypp - (a * to_mp(z) + b) * value - c)


def series_covering(params: Parameters, center, y0, y1, radius, precision: int | None = None,
                    min_order: int = 20, max_order: int = 20000) -> SeriesSolution:
    """Smallest-order series whose validity radius reaches ``radius``."""
    order = max(min_order, MIN_ORDER)
    prec = precision
    while True:
        if precision is None:
            prec = working_precision(order)
        series = build_series(params, center, y0, y1, order, prec)
        if series.validity_radius >= radius:
            return series
        if order >= max_order:
            raise RadiusExceeded(f"order {order} cannot cover radius {radius}")
        order = min(max_order, int(order * 1.4) + 8)


def recenter(series: SeriesSolution, new_center, radius=None, order: int | None = None) -> SeriesSolution:
    """Re-expand the solution about ``new_center`` from its value and slope there."""
    y0, y1 = value_and_derivative(series, new_center)
    if order is not None:
        return build_series(series.params, new_center, y0, y1, order, series.precision)
    return series_covering(series.params, new_center, y0, y1,
                           radius if radius is not None else series.validity_radius,
                           series.precision)


def continue_to(series: SeriesSolution, z, step: float = 2.0) -> SeriesSolution:
    """Step along the segment center -> z, re-centering every ``step`` units."""
    with mp.workdps(series.precision):
        z = to_mp(z)
        distance = abs(z - series.center)
        n_steps = max(1, int(mp.ceil(distance / step)))
        current = series
        start = series.center
        for k in range(1, n_steps + 1):
            point = start + (z - start) * k / n_steps
            if abs(point - current.center) <= current.validity_radius:
                y0, y1 = value_and_derivative(current, point)
            else:
                raise RadiusExceeded("continuation step exceeds the local validity radius")
            current = series_covering(series.params, point, y0, y1, step * 1.01, series.precision)
        return current


def principal_solution(params: Parameters, radius, precision: int | None = None) -> SeriesSolution:
    """S with S(0) = 0 and S'(0) = deriv_norm, valid on |z| <= radius."""
    return series_covering(params, 0, 0, params.deriv_norm, radius, precision)


def double_zero_solution(params: Parameters, radius, center=0, precision: int | None = None) -> SeriesSolution:
    """The solution with a double zero at ``center`` (proportional to c)."""
    return series_covering(params, center, 0, 0, radius, precision)
