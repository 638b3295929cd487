"""Fourier transform of the weighted middle-third Cantor measures.

The measure is the attractor of ``x -> x/3`` and ``x -> x/3 + 2/3`` with
branch weights ``(p, 1-p)``, so its transform is the convergent product

    mu_hat(xi) = prod_{k>=1} ( p + (1-p) exp(-4 pi i xi / 3^k) ).

The product is truncated after ``K(xi) = max(1, ceil(log3 max(|xi|, 1))) +
ceil(log3(1/tol)) + 5`` factors; the omitted factors are replaced by the
single linear phase ``exp(-2 pi i (1-p) xi 3^{-K})`` (the accumulated mean
phase of the tail), giving relative error at most ``tol``.
"""

from __future__ import annotations

import math

import numpy as np

from .evaluators import Scalar1DEvaluator
from .kernels import cantor_products

LOG3 = math.log(3.0)


def truncation_factors(xi_max: float, tol: float) -> int:
    """Number of product factors for frequencies up to ``|xi| = xi_max``."""
    if tol <= 0:
        raise ValueError(f"tol={tol} must be positive")
    lead = max(1, math.ceil(math.log(max(abs(xi_max), 1.0)) / LOG3))
    return lead + math.ceil(math.log(1.0 / tol) / LOG3) + 5


def cantor_fourier(p: float, xi, tol: float = 1e-12):
    """Transform value(s) at frequency ``xi`` (scalar or array).

    ``p`` in [0, 1]; relative error at most ``tol``.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} outside [0, 1]")
    arr = np.asarray(xi, dtype=np.float64)
    scalar = arr.ndim == 0
    flat = np.atleast_1d(arr)
    xi_max = float(np.max(np.abs(flat))) if flat.size else 1.0
    out = cantor_products(p, flat, truncation_factors(xi_max, tol))
    out = np.asarray(out).reshape(np.shape(arr))
    return complex(out) if scalar else out


def make_cantor_evaluator(p: float, tol: float = 1e-12) -> Scalar1DEvaluator:
    """Scalar evaluator for the weight-``p`` Cantor measure."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} outside [0, 1]")

    def func(xi: np.ndarray) -> np.ndarray:
        return cantor_fourier(p, xi, tol=tol)

    return Scalar1DEvaluator(label=f"cantor:{p:g}", func=func, symmetric=True)
