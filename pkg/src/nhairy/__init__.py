"""Validated numerics for y'' = (a z + b) y + c: series solutions, zeros,
Laurent coefficients of the logarithmic derivative, and solution maps."""

from .errors import (
    DegenerateA,
    Inconclusive,
    InsufficientZeros,
    IntervalMiss,
    NhairyError,
    NoConvergence,
    NotASimpleZero,
    NotConverged,
    Oscillating,
    QuadratureFailure,
    RadiusExceeded,
    ScanTooCoarse,
    ZeroOnContour,
    ZeroSetMismatch,
)
from .laurent import LaurentSequence, WalkState, laurent_coeffs, next_zero, power_sum_residual, walk_zeros
from .series import (
    EvalResult,
    Parameters,
    SeriesSolution,
    build_series,
    derivative,
    double_zero_solution,
    evaluate,
    principal_solution,
    residual_check,
)
from .special import Hyp1F2Args, LommelParams, airy_homogeneous, hyp1f2, lommel_integral, lommel_series, scorer
from .transforms import TransformSpec, apply_transform, map_params
from .zeros import (
    Family,
    ZeroInterval,
    ZeroRecord,
    argument_principle_count,
    classify_families,
    disk_zeros,
    perturbed_zero_shift,
    polya_interval,
    ray_zeros,
    real_zeros,
)

__version__ = "0.1.0"
