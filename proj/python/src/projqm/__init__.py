"""Geometric formulation of finite-dimensional quantum mechanics.

Thin re-export of the compiled core. Matrices are flat row-major lists of
complex numbers passed together with the dimension n; observables are opaque
handles created by quantize().
"""

from ._core import (
    ConvergenceError,
    DimensionError,
    Observable,
    ValidationError,
    __version__,
    bounds,
    cstar_norm,
    dequantize,
    eig_hermitian,
    evolve,
    evolve_exact,
    exact_integral,
    exact_integral_pair,
    gleason_fit,
    integral_mean,
    integral_product,
    jordan,
    lie,
    mc_integral_pair,
    poisson,
    positivity,
    quantize,
    sample_points,
    star,
    star_at,
    verify,
)

__all__ = [
    "ConvergenceError",
    "DimensionError",
    "Observable",
    "ValidationError",
    "__version__",
    "bounds",
    "cstar_norm",
    "dequantize",
    "eig_hermitian",
    "evolve",
    "evolve_exact",
    "exact_integral",
    "exact_integral_pair",
    "gleason_fit",
    "integral_mean",
    "integral_product",
    "jordan",
    "lie",
    "mc_integral_pair",
    "poisson",
    "positivity",
    "quantize",
    "sample_points",
    "star",
    "star_at",
    "verify",
]
