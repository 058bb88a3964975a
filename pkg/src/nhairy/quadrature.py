"""Adaptive Gauss-Legendre quadrature at arbitrary precision."""

from __future__ import annotations

from functools import lru_cache

import mpmath as mp
from mpmath.calculus.quadrature import GaussLegendre

from .errors import QuadratureFailure


@lru_cache(maxsize=32)
def gauss_legendre_nodes(level: int, dps: int):
    """Nodes and weights of mpmath's 3 * 2**(level - 1)-point Gauss-Legendre rule on [-1, 1]."""
    with mp.workdps(dps + 10):
        pairs = GaussLegendre(mp.mp).calc_nodes(level, mp.mp.prec)
        return tuple(x for x, _ in pairs), tuple(w for _, w in pairs)


def _panel(f, lo, hi, nodes, weights):
    half = (hi - lo) / 2
    mid = (hi + lo) / 2
    return half * mp.fsum(w * f(mid + half * x) for x, w in zip(nodes, weights))


def adaptive_gauss(f, lo, hi, tol, level: int = 4, max_depth: int = 40, dps: int | None = None):
    """Integrate ``f`` over [lo, hi] to absolute tolerance ``tol``.

    Each panel gets a fixed Gauss-Legendre rule (24 points at the default
    ``level``) and is compared with the sum of its two halves; a panel is
    accepted when they agree within its share of ``tol``.
    """
    dps = dps or mp.mp.dps
    with mp.workdps(dps):
        lo, hi = mp.mpmathify(lo), mp.mpmathify(hi)
        if lo == hi:
            return mp.mpf(0)
        nodes, weights = gauss_legendre_nodes(level, dps)
        total_width = abs(hi - lo)
        tol = mp.mpf(tol)
        stack = [(lo, hi, _panel(f, lo, hi, nodes, weights), 0)]
        result = mp.mpf(0)
        while stack:
            a, b, whole, depth = stack.pop()
            m = (a + b) / 2
            left = _panel(f, a, m, nodes, weights)
            right = _panel(f, m, b, nodes, weights)
            if abs(whole - (left + right)) <= tol * abs(b - a) / total_width:
                result += left + right
            elif depth >= max_depth:
                raise QuadratureFailure(
                    f"refinement stalled on [{mp.nstr(a, 8)}, {mp.nstr(b, 8)}] above tol {mp.nstr(tol, 3)}"
                )
            else:
                stack.append((a, m, left, depth + 1))
                stack.append((m, b, right, depth + 1))
        return result
