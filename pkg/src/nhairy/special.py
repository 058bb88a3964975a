"""Hypergeometric 1F2, Lommel s_{0,nu}, Scorer and Airy functions.

These are evaluated independently of the zero finder and serve as
oracles for the series engine: 1F2 and the Lommel function by their
power series, the Lommel function again by quadrature of its integral
representation, and Hi/Gi/Ai/Bi as series solutions seeded with
Gamma-function initial values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from .errors import NoConvergence
from .quadrature import adaptive_gauss
from .series import (
    Parameters,
    SeriesSolution,
    continue_to,
    series_covering,
    to_mp,
    value_and_derivative,
)

__all__ = [
    "Hyp1F2Args",
    "LommelParams",
    "hyp1f2",
    "lommel_series",
    "lommel_integral",
    "lommel_polya_form",
    "polya_weight",
    "scorer",
    "airy_homogeneous",
    "airy_integral",
    "initial_values",
]

# beyond this distance from the origin the Scorer/Airy series are continued by stepping
_DIRECT_RADIUS = 4.0


def _num(x):
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return to_mp(x)


def _nonpositive_integer(x) -> bool:
    return x <= 0 and x == int(x)


@dataclass(frozen=True)
class Hyp1F2Args:
    """Upper parameter ``a1`` and lower parameters ``b1``, ``b2`` of 1F2."""

    a1: object
    b1: object
    b2: object

    def __post_init__(self):
        for name in ("b1", "b2"):
            value = getattr(self, name)
            if _nonpositive_integer(float(value)) and _nonpositive_integer(_num(value)):
                raise ValueError(f"{name} = {value} is a pole of 1F2")


@dataclass(frozen=True)
class LommelParams:
    mu: object
    nu: object

    def __post_init__(self):
        mu, nu = _num(self.mu), _num(self.nu)
        if (mu + 1) ** 2 == nu ** 2:
            raise ValueError("degenerate Lommel parameters: (mu + 1)**2 == nu**2")
        for b in ((mu - nu + 3) / 2, (mu + nu + 3) / 2):
            if _nonpositive_integer(b):
                raise ValueError("degenerate Lommel parameters")


def _peak_log10_term(a1, b1, b2, x, max_terms):
    """log10 of the largest 1F2 term, scanned in floating point.

    Raises :class:`NoConvergence` when the terms are still growing after
    ``max_terms``, before any multiprecision work is attempted.
    """
    ax, lb1, lb2 = complex(a1), complex(b1), complex(b2)
    xx = complex(x)
    if xx == 0:
        return 0.0
    log_t = peak = 0.0
    ratio = math.inf
    for n in range(max_terms):
        ratio = abs((ax + n) * xx / ((lb1 + n) * (lb2 + n) * (n + 1)))
        if ratio == 0:
            break
        log_t += math.log10(ratio)
        peak = max(peak, log_t)
        if n > 2 and ratio < 0.5 and log_t < peak - 40:
            break
    else:
        if ratio >= 1:
            raise NoConvergence(f"1F2 terms still growing after {max_terms} terms")
    return peak


def hyp1f2(args: Hyp1F2Args, x, precision: int = 50, max_terms: int = 200000):
    """Sum ``(a1)_n / ((b1)_n (b2)_n) x**n / n!`` to ``precision`` digits.

    Guard digits are added for the cancellation implied by the largest
    term.  Raises :class:`NoConvergence` if the terms have not begun to
    decrease within ``max_terms``.
    """
    with mp.workdps(precision + 10):
        a1, b1, b2 = _num(args.a1), _num(args.b1), _num(args.b2)
        x = to_mp(x)
    guard = max(0, int(_peak_log10_term(a1, b1, b2, x, max_terms))) + 10
    with mp.workdps(precision + guard):
        a1, b1, b2 = _num(args.a1), _num(args.b1), _num(args.b2)
        x = to_mp(x)
        eps = mp.mpf(10) ** (-(precision + 5))
        term = mp.mpf(1)
        total = term
        previous = None
        decreasing = False
        for n in range(max_terms):
            if a1 + n == 0:
                return +total
            new_term = term * (a1 + n) * x / ((b1 + n) * (b2 + n) * (n + 1))
            decreasing = abs(new_term) <= abs(term)
            term = new_term
            previous, total = total, total + term
            if decreasing and abs(total - previous) <= eps * max(abs(total), mp.mpf(1)) * 1e-5:
                break
        else:
            raise NoConvergence(f"1F2 terms still {'decreasing' if decreasing else 'growing'} after {max_terms} terms")
    with mp.workdps(precision):
        return +total


def lommel_series(params: LommelParams, z, precision: int = 50):
    """s_{mu,nu}(z) through its 1F2 form."""
    with mp.workdps(precision + 10):
        mu, nu = _num(params.mu), _num(params.nu)
        z = to_mp(z)
        args = Hyp1F2Args(1, (mu - nu + 3) / 2, (mu + nu + 3) / 2)
        f = hyp1f2(args, -z * z / 4, precision + 5)
        value = z ** (mu + 1) / ((mu + 1) ** 2 - nu ** 2) * f
    with mp.workdps(precision):
        return +value


def _check_nu(nu):
    if not abs(nu) < 1:
        raise ValueError(f"|nu| must be < 1, got {nu}")


def lommel_integral(nu, z, tol=1e-25, precision: int = 50):
    """s_{0,nu}(z) = (1 + cos(pi nu))^-1 * int_0^pi sin(z sin t) cos(nu t) dt."""
    with mp.workdps(precision):
        nu, z = _num(nu), to_mp(z)
        _check_nu(nu)
        prefactor = 1 / (1 + mp.cospi(nu))
        integral = adaptive_gauss(lambda t: mp.sin(z * mp.sin(t)) * mp.cos(nu * t), 0, mp.pi,
                                  tol / prefactor, dps=precision)
        return prefactor * integral


def polya_weight(nu, t, precision: int | None = None):
    """Factor multiplying sin(z t) in the finite-interval representation.

    ``[cos(nu asin t) + cos(nu pi - nu asin t)] / sqrt(1 - t**2)`` for
    0 < t < 1, without the ``1/(1 + cos(pi nu))`` prefactor.
    """
    with mp.workdps(precision or mp.mp.dps):
        nu, t = _num(nu), to_mp(t)
        if not 0 < t < 1:
            raise ValueError(f"t must lie in (0, 1), got {t}")
        s = mp.asin(t)
        return (mp.cos(nu * s) + mp.cos(nu * mp.pi - nu * s)) / mp.sqrt(1 - t * t)


def lommel_polya_form(nu, z, tol=1e-25, precision: int = 50):
    """s_{0,nu}(z) from ``int_0^1 sin(z t) w(t) dt`` with the weight of :func:`polya_weight`.

    The substitution t = sin(theta) removes the 1/sqrt(1 - t**2) end-point
    singularity; the weight itself is still evaluated through
    :func:`polya_weight`.
    """
    with mp.workdps(precision):
        nu, z = _num(nu), to_mp(z)
        _check_nu(nu)
        prefactor = 1 / (1 + mp.cospi(nu))

        def integrand(theta):
            t = mp.sin(theta)
            return mp.sin(z * t) * polya_weight(nu, t) * mp.cos(theta)

        return prefactor * adaptive_gauss(integrand, 0, mp.pi / 2, tol / prefactor, dps=precision)


def initial_values(kind: str, precision: int = 50):
    """(f(0), f'(0)) for Ai, Bi, Gi, Hi from Gamma-function closed forms."""
    with mp.workdps(precision + 5):
        g13, g23 = mp.gamma(mp.mpf(1) / 3), mp.gamma(mp.mpf(2) / 3)
        three = mp.mpf(3)
        table = {
            "Ai": (1 / (three ** (mp.mpf(2) / 3) * g23), -1 / (three ** (mp.mpf(1) / 3) * g13)),
            "Bi": (1 / (three ** (mp.mpf(1) / 6) * g23), three ** (mp.mpf(1) / 6) / g13),
            "Gi": (1 / (three ** (mp.mpf(7) / 6) * g23), 1 / (three ** (mp.mpf(5) / 6) * g13)),
        }
        table["Hi"] = (2 * table["Gi"][0], 2 * table["Gi"][1])
        if kind not in table:
            raise ValueError(f"unknown function {kind!r}")
        return table[kind]


def _inhomogeneity(kind: str):
    return {"Ai": 0, "Bi": 0, "Hi": 1 / mp.pi, "Gi": -1 / mp.pi}[kind]


@lru_cache(maxsize=64)
def function_series(kind: str, radius: float, precision: int) -> SeriesSolution:
    """Series about 0 of Ai, Bi, Hi or Gi covering |z| <= radius."""
    with mp.workdps(precision + 5):
        y0, y1 = initial_values(kind, precision + 5)
        params = Parameters(1, 0, _inhomogeneity(kind))
    return series_covering(params, 0, y0, y1, radius, precision)


def _evaluate(kind: str, z, precision: int, derivative: bool = False):
    with mp.workdps(precision):
        z = to_mp(z)
        if abs(z) <= _DIRECT_RADIUS:
            series = function_series(kind, _DIRECT_RADIUS, precision)
        else:
            base = function_series(kind, _DIRECT_RADIUS, precision)
            series = continue_to(base, z)
        value, slope = value_and_derivative(series, z)
        return (value, slope) if derivative else value


def scorer(kind: str, z, precision: int = 50, derivative: bool = False):
    """Scorer function Hi (y'' = z y + 1/pi) or Gi (y'' = z y - 1/pi)."""
    if kind not in ("Hi", "Gi"):
        raise ValueError(f"kind must be 'Hi' or 'Gi', got {kind!r}")
    return _evaluate(kind, z, precision, derivative)


def airy_homogeneous(kind: str, z, precision: int = 50, derivative: bool = False):
    """Airy function Ai or Bi from its Taylor series about 0."""
    if kind not in ("Ai", "Bi"):
        raise ValueError(f"kind must be 'Ai' or 'Bi', got {kind!r}")
    return _evaluate(kind, z, precision, derivative)


def airy_integral(kind: str, lo, hi, tol=1e-30, precision: int = 50):
    """int_lo^hi of Ai or Bi by adaptive quadrature on the series."""
    with mp.workdps(precision):
        lo, hi = to_mp(lo), to_mp(hi)
        radius = float(max(abs(lo), abs(hi))) + 0.5
        series = function_series(kind, max(radius, 1.0), precision)
        return adaptive_gauss(lambda x: value_and_derivative(series, x)[0], lo, hi, tol, dps=precision)
