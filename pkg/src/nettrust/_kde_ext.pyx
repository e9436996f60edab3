# cython: language_level=3
"""Compiled reflected-Gaussian KDE kernel."""
import numpy as np
cimport cython
from cython.parallel cimport prange
from libc.math cimport exp

cdef double INV_SQRT_2PI = 0.3989422804014327
# exp(-0.5 * u * u) is exactly +0.0 beyond this, so the call can be skipped
# without changing a single output bit
cdef double U2_UNDERFLOW = 1500.0


def reflected_kde(const double[::1] grid, const double[::1] samples, double h,
                  int num_threads=1):
    cdef Py_ssize_t n_grid = grid.shape[0]
    cdef Py_ssize_t n = samples.shape[0]
    cdef Py_ssize_t i, j
    cdef double t, q, u, acc
    cdef double inv_h = 1.0 / h
    cdef double scale = INV_SQRT_2PI / (n * h)
    out = np.empty(n_grid, dtype=np.float64)
    cdef double[::1] out_v = out

    if num_threads < 1:
        num_threads = 1
    # Each grid point sums samples in input order, so output does not depend
    # on the thread count.
    for j in prange(n_grid, nogil=True, schedule="static", num_threads=num_threads):
        t = grid[j]
        acc = 0.0
        for i in range(n):
            q = samples[i]
            u = (t - q) * inv_h
            if u * u < U2_UNDERFLOW:
                acc = acc + exp(-0.5 * u * u)
            u = (t + q) * inv_h
            if u * u < U2_UNDERFLOW:
                acc = acc + exp(-0.5 * u * u)
            u = (t - (2.0 - q)) * inv_h
            if u * u < U2_UNDERFLOW:
                acc = acc + exp(-0.5 * u * u)
        out_v[j] = acc * scale
    return out
