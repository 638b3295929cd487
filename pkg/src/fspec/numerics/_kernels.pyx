# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: the self-similar Fourier product and integer-order
Bessel evaluation.  Semantics mirror `_kernels_np.py` exactly; the NumPy
module is the fallback when this extension is unavailable."""

import numpy as np

cimport numpy as cnp
from libc.math cimport M_PI, cos, fabs, sin, sqrt

cnp.import_array()

BACKEND = "cython"

SERIES_SWITCH = 12.0
cdef double _SERIES_SWITCH_C = 12.0
cdef int _SERIES_TERMS = 48
cdef int _ASYM_TERMS = 26


def cantor_products(double p, xi, Py_ssize_t n_factors):
    """Truncated self-similar product with linear-phase tail correction."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] x = \
        np.ascontiguousarray(xi, dtype=np.float64).ravel()
    cdef Py_ssize_t n = x.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = \
        np.empty(n, dtype=np.complex128)
    cdef double q = 1.0 - p
    cdef double re, im, fre, fim, phi, tre, pw
    cdef Py_ssize_t i, k
    for i in range(n):
        re = 1.0
        im = 0.0
        pw = 1.0 / 3.0
        for k in range(n_factors):
            phi = -4.0 * M_PI * x[i] * pw
            fre = p + q * cos(phi)
            fim = q * sin(phi)
            tre = re * fre - im * fim
            im = re * fim + im * fre
            re = tre
            pw /= 3.0
        # after the loop pw = 3^{-(K+1)}; tail geometric sum is 3^{-K}/2
        phi = -2.0 * M_PI * q * (3.0 * pw) * x[i]
        fre = cos(phi)
        fim = sin(phi)
        out[i] = (re * fre - im * fim) + 1j * (re * fim + im * fre)
    return out.reshape(np.shape(xi))


def bessel_j_int(int m, t):
    """First-kind Bessel function of integer order m >= 0 on t >= 0."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tt = \
        np.ascontiguousarray(t, dtype=np.float64).ravel()
    cdef Py_ssize_t n = tt.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t i
    for i in range(n):
        if tt[i] < _SERIES_SWITCH_C:
            out[i] = _series_one(m, tt[i])
        else:
            out[i] = _asymptotic_one(m, tt[i])
    return out.reshape(np.shape(t))


cdef double _series_one(int m, double t) nogil:
    cdef double half = 0.5 * t
    cdef double x2 = half * half
    cdef double term = 1.0
    cdef double acc
    cdef int i, k
    for i in range(1, m + 1):
        term *= half / i
    acc = term
    for k in range(1, _SERIES_TERMS + 1):
        term *= -x2 / (k * (k + m))
        acc += term
    return acc


cdef double _asymptotic_one(int m, double t) nogil:
    cdef double mu = 4.0 * m * m
    cdef double inv8t = 1.0 / (8.0 * t)
    cdef double c_prev = 1.0
    cdef double p_sum = 1.0
    cdef double q_sum = 0.0
    cdef double c, sign, omega, odd2
    cdef int j
    for j in range(1, _ASYM_TERMS + 1):
        odd2 = (2.0 * j - 1.0) * (2.0 * j - 1.0)
        c = c_prev * ((mu - odd2) / j) * inv8t
        if odd2 > mu and fabs(c) >= fabs(c_prev):
            break
        sign = -1.0 if (j // 2) % 2 else 1.0
        if j % 2 == 1:
            q_sum += sign * c
        else:
            p_sum += sign * c
        c_prev = c
    omega = t - (0.5 * m + 0.25) * M_PI
    return sqrt(2.0 / (M_PI * t)) * (p_sum * cos(omega) - q_sum * sin(omega))
