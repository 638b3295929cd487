"""Pure-NumPy implementations of the hot kernels.

Semantics match the compiled extension (`_kernels.pyx`) exactly: same
truncation rules, same term recurrences.  The compiled module is preferred
at import time when available; see :mod:`fspec.numerics.kernels`.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"

SERIES_SWITCH = 12.0  # ascending series below, asymptotic expansion above
_SERIES_TERMS = 48
_ASYM_TERMS = 26


def cantor_products(p: float, xi: np.ndarray, n_factors: int) -> np.ndarray:
    """Truncated self-similar product for the weighted ternary measure.

    ``prod_{k=1..K} (p + (1-p) exp(-4 pi i xi / 3^k))`` followed by the
    linear-phase tail correction ``exp(-2 pi i (1-p) xi 3^{-K})`` (the sum
    of the omitted factors' mean phases).
    """
    xi = np.asarray(xi, dtype=np.float64)
    q = 1.0 - p
    out = np.ones(xi.shape, dtype=np.complex128)
    pw = 1.0 / 3.0
    for _ in range(n_factors):
        out *= p + q * np.exp((-4j * np.pi * pw) * xi)
        pw /= 3.0
    # after the loop pw = 3^{-(K+1)}; the tail geometric sum is 3^{-K}/2
    out *= np.exp((-2j * np.pi * q * (3.0 * pw)) * xi)
    return out


def bessel_j_int(m: int, t: np.ndarray) -> np.ndarray:
    """First-kind Bessel function of integer order ``m >= 0`` on ``t >= 0``.

    Ascending series below ``SERIES_SWITCH``, large-argument expansion with
    adaptively truncated correction sums above.
    """
    t = np.asarray(t, dtype=np.float64)
    out = np.empty(t.shape, dtype=np.float64)
    small = t < SERIES_SWITCH
    if np.any(small):
        out[small] = _series(m, t[small])
    if np.any(~small):
        out[~small] = _asymptotic(m, t[~small])
    return out


def _series(m: int, t: np.ndarray) -> np.ndarray:
    half = 0.5 * t
    x2 = half * half
    # term_0 = (t/2)^m / m!
    term = np.ones_like(t)
    for i in range(1, m + 1):
        term *= half / i
    acc = term.copy()
    for k in range(1, _SERIES_TERMS + 1):
        term *= -x2 / (k * (k + m))
        acc += term
    return acc


def _asymptotic(m: int, t: np.ndarray) -> np.ndarray:
    mu = 4.0 * m * m
    inv8t = 1.0 / (8.0 * t)
    # c_j = c_{j-1} * (mu - (2j-1)^2) / j * inv8t; P = c0 - c2 + c4 - ...,
    # Q = c1 - c3 + c5 - ...; terms are added only while they keep shrinking
    # (optimal truncation of the divergent expansion).
    c_prev = np.ones_like(t)
    p_sum = np.ones_like(t)
    q_sum = np.zeros_like(t)
    active = np.ones(t.shape, dtype=bool)
    for j in range(1, _ASYM_TERMS + 1):
        c = c_prev * ((mu - (2 * j - 1) ** 2) / j) * inv8t
        # optimal truncation: stop at the smallest term, but only once past
        # the initial hump of the coefficient sequence ((2j-1)^2 > mu)
        if (2 * j - 1) ** 2 > mu:
            active = active & (np.abs(c) < np.abs(c_prev))
        if not np.any(active):
            break
        sign = -1.0 if (j // 2) % 2 else 1.0  # +, +, -, -, +, +, ...
        if j % 2 == 1:
            q_sum = np.where(active, q_sum + sign * c, q_sum)
        else:
            p_sum = np.where(active, p_sum + sign * c, p_sum)
        c_prev = c
    omega = t - (0.5 * m + 0.25) * np.pi
    return np.sqrt(2.0 / (np.pi * t)) * (p_sum * np.cos(omega)
                                         - q_sum * np.sin(omega))
