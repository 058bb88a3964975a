"""Laurent coefficients of the logarithmic derivative and the zero walk.

Around a simple zero the logarithmic derivative of a solution S of
``y'' = (a z + b) y + c`` with S(0) = 0 has the expansion

    S'/S = 1/z + sum_{n >= 0} c_n z**n,

whose coefficients obey a cubic recursion seeded by ``beta = c / (2 S'(0))``.
Since ``c_n = -sum_k xi_k**-(n+1)`` over the other zeros xi_k, the ratio
c_n / c_{n+1} tends to the zero nearest the expansion point whenever that
zero is unique in modulus.  Shifting the expansion point to the new zero
gives a walk from zero to zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import mpmath as mp

from .errors import InsufficientZeros, NotConverged, Oscillating, RadiusExceeded
from .series import Parameters, SeriesSolution, recenter, series_covering, to_mp, value_and_derivative

__all__ = [
    "LaurentSequence",
    "laurent_coeffs",
    "PowerSumResult",
    "power_sum_residual",
    "NextZero",
    "next_zero",
    "WalkState",
    "walk_zeros",
    "walk_precision",
    "CONVERGED",
    "OSCILLATING",
    "DIVERGING",
    "MAX_TERMS",
]

CONVERGED = "converged"
OSCILLATING = "oscillating_2_periodic"
DIVERGING = "diverging"
MAX_TERMS = "max_terms"

# relative tolerance on successive ratios c_n / c_{n+1}
RATIO_TOL = 1e-5
RATIO_WINDOW = 5
OSCILLATION_WINDOW = 10


def walk_precision(N: int) -> int:
    """Digits needed to keep the cubic sums clean up to order N."""
    return 30 + (N + 1) // 2


@dataclass(frozen=True)
class LaurentSequence:
    """Coefficients c_0..c_N of S'/S - 1/z about a simple zero."""

    a: object
    b_eff: object
    beta: object
    coeffs: tuple
    precision: int

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]


def laurent_coeffs(a, b_eff, beta, N: int, precision: int | None = None) -> LaurentSequence:
    """c_0..c_N from the cubic recursion, O(N**2) operations.

    The double sum in the cubic term is a convolution of the running
    self-convolution ``s_k = sum_j c_j c_{k-j}`` with the sequence itself.
    """
    if N < 3:
        raise ValueError(f"N must be >= 3, got {N}")
    precision = precision or max(50, walk_precision(N))
    with mp.workdps(precision):
        a, b, c0 = to_mp(a), to_mp(b_eff), to_mp(beta)
        c = [c0, b / 3 - c0 ** 2, c0 ** 3 - b * c0 / 4 + a / 4]
        square = [c[0] * c[0], 2 * c[0] * c[1]]
        for n in range(1, N - 1):
            # c has entries up to n + 1, square up to n
            square.append(mp.fsum(c[k] * c[n + 1 - k] for k in range(n + 2)))
            quadratic = square[n + 1]
            shifted = mp.fsum((k + 1) * c[k + 1] * c[n - k] for k in range(n + 1))
            cubic = mp.fsum(square[k] * c[n - k] for k in range(n + 1))
            c.append((b * c[n] + a * c[n - 1] - 3 * quadratic - 3 * shifted - cubic) / ((n + 4) * (n + 2)))
        return LaurentSequence(a, b, c0, tuple(c[: N + 1]), precision)


# ---------------------------------------------------------------- power sums

class PowerSumResult(NamedTuple):
    residual: float
    tail_bound: float
    zeros_used: int


def _counting_constant(moduli) -> float:
    """C with k <= C r_k**1.5 for the outer half of the zero list."""
    start = len(moduli) // 2
    return max((k + 1) / r ** 1.5 for k, r in enumerate(moduli) if k >= start)


def power_sum_residual(seq: LaurentSequence, zeros, n: int, target: float | None = None) -> PowerSumResult:
    """|c_n + sum_k xi_k**-(n+1)| over the given nonzero zeros, with a tail bound.

    ``zeros`` are ZeroRecords (or plain numbers), relative to the
    expansion point; the zero at the expansion point itself is skipped
    and multiplicities are honoured.  The tail bound assumes the
    counting law k ~ C |xi_k|**1.5 with C fitted on the outer half of
    the supplied zeros, so the omitted terms are bounded by
    ``C**s * zeta(s, K + 1)`` with s = 2(n + 1)/3.  Raises
    :class:`InsufficientZeros` when that bound exceeds ``target``.
    """
    if n < 1 or n >= len(seq):
        raise ValueError(f"n must lie in [1, {len(seq) - 1}]")
    with mp.workdps(seq.precision):
        points = []
        for z in zeros:
            loc, mult = (z.location, z.multiplicity) if hasattr(z, "location") else (to_mp(z), 1)
            if abs(loc) > mp.mpf(10) ** (-(seq.precision // 2)):
                points += [loc] * mult
        if not points:
            raise InsufficientZeros("no nonzero zeros supplied")
        points.sort(key=abs)
        total = mp.fsum(p ** (-(n + 1)) for p in points)
        residual = abs(seq[n] + total)
        moduli = [float(abs(p)) for p in points]
        C = _counting_constant(moduli)
        s = 2 * (n + 1) / 3
        tail = float(mp.mpf(C) ** s * mp.zeta(s, len(points) + 1))
    if target is not None and tail > target:
        raise InsufficientZeros(f"tail bound {tail:.3g} exceeds target {target:.3g} with {len(points)} zeros")
    return PowerSumResult(float(residual), tail, len(points))


# ---------------------------------------------------------------- ratio limit

@dataclass(frozen=True)
class NextZero:
    """Outcome of one ratio-limit step."""

    zero: object
    step: object
    spread: float
    diagnostics: str
    verified: bool
    newton_distance: float
    sequence: LaurentSequence = field(repr=False)


def _vanishes(x, neighbours, precision) -> bool:
    return abs(x) <= mp.mpf(10) ** (-(precision - 10)) * max(neighbours)


def _alternate_zero_parity(c, precision):
    """Parity of the indices whose coefficients vanish in the upper half, or None."""
    N = len(c) - 1
    for parity in (0, 1):
        idx = [n for n in range(N // 2, N) if n % 2 == parity and n > 0]
        if idx and all(_vanishes(c[n], (abs(c[n - 1]), abs(c[n + 1])), precision) for n in idx):
            return parity
    return None


def _stable(values, tol, window) -> bool:
    tail = values[-(window + 1):]
    return len(tail) == window + 1 and all(abs(r1 - r0) < tol * abs(r1) for r0, r1 in zip(tail, tail[1:]))


def _spread(values, window) -> float:
    tail = values[-(window + 1):]
    return float(max(abs(r1 - r0) / abs(r1) for r0, r1 in zip(tail, tail[1:])))


def _ratio_limit(c, xi, tol, window, precision):
    """Limit of c_n / c_{n+1}; raises Oscillating / NotConverged, or returns (step, spread)."""
    N = len(c) - 2
    parity = _alternate_zero_parity(c, precision)
    if parity is not None:
        # zeros come in pairs +-r about the expansion point: c_n / c_{n+2} -> r**2
        two_step = [c[n] / c[n + 2] for n in range(1, N) if n % 2 != parity]
        if not _stable(two_step, tol, window):
            raise NotConverged("two-step ratios did not settle")
        r = mp.sqrt(two_step[-1])
        raise Oscillating("zeros of equal modulus on opposite sides; the ratio alternates between 0 and infinity",
                          (xi + r, xi - r))
    if any(x == 0 for x in c[1:]):
        raise ZeroDivisionError
    ratios = [c[n] / c[n + 1] for n in range(1, N + 1)]
    if _stable(ratios, tol, window):
        return ratios[-1], _spread(ratios, window)
    even, odd = ratios[-1::-2], ratios[-2::-2]
    half = OSCILLATION_WINDOW // 2
    if _stable(even[:half + 1][::-1], tol, half) and _stable(odd[:half + 1][::-1], tol, half):
        gap = abs(even[0] - odd[0])
        if gap > 1e3 * tol * abs(even[0]):
            raise Oscillating("ratios alternate between two accumulation values", (xi + even[0], xi + odd[0]))
    raise NotConverged(f"ratio spread {_spread(ratios, window):.3g} above tolerance {tol:g} at N = {N}")


def next_zero(a, b, c, xi_k, deriv_at_xi_k, N: int = 80, precision: int | None = None, *,
              tol: float = RATIO_TOL, window: int = RATIO_WINDOW, beta_rule: str = "half",
              verify_series: SeriesSolution | None = None, verify_tol: float = 1e-4,
              max_terms: int | None = None, deriv_at_origin=1) -> NextZero:
    """One step of the walk: the zero nearest ``xi_k`` from the ratio c_N / c_{N+1}.

    ``beta_rule`` selects the seed: ``"half"`` uses c / (2 S'(xi_k)) and
    ``"literal"`` uses beta_0 / S'(xi_k) with beta_0 = c / (2 S'(0)) and
    S'(0) = ``deriv_at_origin``.  Only the first is the true c_0 at xi_k
    in general; they agree when S'(0) = 1.  If the ratios have not settled, N is doubled up to
    ``max_terms`` (default: no escalation), raising the precision to
    :func:`walk_precision` of the new N.

    The new point is re-verified by evaluating S there: against
    ``verify_series`` if given, else against the local solution with
    S(xi_k) = 0 and S'(xi_k) = ``deriv_at_xi_k``.  ``verified`` is set
    when the Newton distance |S/S'| is within ``verify_tol`` times
    max(1, |step|).
    """
    max_terms = max(N, max_terms or N)
    while True:
        try:
            return _next_zero_at(a, b, c, xi_k, deriv_at_xi_k, N, precision or max(50, walk_precision(N)),
                                 tol, window, beta_rule, verify_series, verify_tol, deriv_at_origin)
        except NotConverged:
            if 2 * N > max_terms:
                raise
            N *= 2
            precision = max(precision or 0, walk_precision(N))


def _next_zero_at(a, b, c, xi_k, deriv_at_xi_k, N, precision, tol, window, beta_rule, verify_series, verify_tol,
                  deriv_at_origin):
    for attempt in (precision, 2 * precision):
        with mp.workdps(attempt):
            a_, b_, c_ = to_mp(a), to_mp(b), to_mp(c)
            xi, deriv = to_mp(xi_k), to_mp(deriv_at_xi_k)
            if deriv == 0:
                raise ValueError("xi_k must be a simple zero (S'(xi_k) != 0)")
            if beta_rule == "half":
                beta = c_ / (2 * deriv)
            elif beta_rule == "literal":
                beta = c_ / (2 * to_mp(deriv_at_origin)) / deriv
            else:
                raise ValueError(f"unknown beta_rule {beta_rule!r}")
            seq = laurent_coeffs(a_, b_ + a_ * xi, beta, N + 1, attempt)
            try:
                step, spread = _ratio_limit(seq.coeffs, xi, tol, window, attempt)
            except ZeroDivisionError:
                continue
            zero = xi + step
            distance = _newton_distance(verify_series, a, b, c, xi, deriv, zero, step, attempt)
            verified = distance <= verify_tol * max(1.0, float(abs(step)))
            return NextZero(zero, step, spread, CONVERGED if verified else DIVERGING, verified, distance, seq)
    raise NotConverged("a Laurent coefficient vanished at working precision, also after escalation")


def _newton_distance(series, a, b, c, xi, deriv, z, step, precision) -> float:
    reach = float(abs(step)) + 1.0
    with mp.workdps(precision):
        if series is None:
            series = series_covering(Parameters(a, b, c, deriv), xi, 0, deriv, reach, precision)
        elif series.validity_radius < float(abs(z - series.center)):
            series = recenter(series, series.center, radius=float(abs(z - series.center)) + 1.0)
        try:
            s, ds = value_and_derivative(series, z)
        except RadiusExceeded:
            return math.inf
    return float(abs(s / ds)) if ds != 0 else math.inf


# ---------------------------------------------------------------- walking

@dataclass
class WalkState:
    """Zeros visited by the walk and why it stopped.

    ``step_history`` holds the visited zeros after the start point,
    ``steps`` the per-step :class:`NextZero` records (or error messages).
    """

    current_zero: object
    step_history: list = field(default_factory=list)
    diagnostics: str = CONVERGED
    steps: list = field(default_factory=list)
    messages: list = field(default_factory=list)


def walk_zeros(params: Parameters, max_steps: int = 3, N: int = 80, precision: int | None = None, *,
               tol: float = RATIO_TOL, beta_rule: str = "half", return_tol: float = 1e-4,
               max_terms: int | None = None) -> WalkState:
    """Walk from the simple zero at the origin by repeated :func:`next_zero` steps.

    S'(xi_k) is re-derived at each step from the solution itself,
    re-expanded about xi_k.  The walk stops after ``max_steps`` steps, on
    a return to the zero visited two steps earlier
    (``oscillating_2_periodic``), on ratio oscillation, on non-convergence
    (``max_terms``) or when the new point fails re-verification
    (``diverging``).  Errors are recorded, not raised.  ``max_terms``
    allows each step to double N up to that cap when the ratios have not
    settled.
    """
    precision = precision or max(50, walk_precision(N))
    with mp.workdps(precision):
        a, b, c = params.triple()
        deriv = params.deriv
        if deriv == 0:
            raise ValueError("the walk starts from a simple zero: deriv_norm must be nonzero")
        xi = mp.mpf(0)
        reach = 4.0
        local = series_covering(params, 0, 0, deriv, reach, precision)
        state = WalkState(xi)
        visited = [xi]
        for _ in range(max_steps):
            try:
                result = next_zero(a, b, c, xi, deriv, N, precision, tol=tol, beta_rule=beta_rule,
                                   deriv_at_origin=params.deriv,
                                   verify_series=local, max_terms=max_terms)
            except Oscillating as exc:
                state.diagnostics = OSCILLATING
                state.messages.append(f"{exc} (candidates {', '.join(mp.nstr(v, 12) for v in exc.values)})")
                break
            except NotConverged as exc:
                state.diagnostics = MAX_TERMS
                state.messages.append(str(exc))
                break
            state.steps.append(result)
            if not result.verified:
                state.diagnostics = DIVERGING
                state.messages.append(f"step to {mp.nstr(result.zero, 12)} failed re-verification "
                                      f"(Newton distance {result.newton_distance:.3g})")
                break
            xi = result.zero
            state.step_history.append(xi)
            state.current_zero = xi
            visited.append(xi)
            if len(visited) >= 3 and abs(visited[-1] - visited[-3]) <= return_tol * max(1, abs(result.step)):
                state.diagnostics = OSCILLATING
                state.messages.append(f"returned to {mp.nstr(visited[-3], 12)}: 2-periodic sequence")
                break
            reach = max(reach, 2 * float(abs(result.step)) + 1)
            local = _reaching(local, xi, reach)
            _, deriv = value_and_derivative(local, xi)
        return state


def _reaching(series: SeriesSolution, point, radius: float) -> SeriesSolution:
    """A series of the same solution about ``point`` valid within ``radius``."""
    if point == series.center and series.validity_radius >= radius:
        return series
    return recenter(series, point, radius=radius)
