# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled shifted power iteration for edge-wise tensor application."""

import numpy as np
cimport numpy as cnp
from libc.math cimport pow

cnp.import_array()


cdef inline double ipow(double x, int e) noexcept nogil:
    cdef double r = 1.0
    cdef int i
    for i in range(e):
        r *= x
    return r


def apply_tensor(const long[:, ::1] edges, const double[::1] deg, double diag,
                 const double[::1] x, double[::1] out):
    """out = diag*D x^[k-1] + A x^{k-1}, with A applied edge-wise."""
    cdef Py_ssize_t m = edges.shape[0], k = edges.shape[1], n = x.shape[0]
    cdef Py_ssize_t i, j, t
    cdef double acc
    cdef double pre[64]
    if k > 63:
        raise ValueError("k > 63 is not supported by the compiled kernel")
    with nogil:
        for i in range(n):
            out[i] = diag * deg[i] * ipow(x[i], <int>(k - 1))
        for j in range(m):
            pre[0] = 1.0
            for t in range(k):
                pre[t + 1] = pre[t] * x[edges[j, t]]
            acc = 1.0
            for t in range(k - 1, -1, -1):
                out[edges[j, t]] += pre[t] * acc
                acc *= x[edges[j, t]]


def power_iterate(const long[:, ::1] edges, const double[::1] deg, double diag,
                  double shift, double tol, long max_iter, x0):
    """Run the Collatz-Wielandt power iteration.

    Returns ``(x, lower, upper, iterations, converged)`` where the bracket
    was evaluated at the returned ``x``.
    """
    cdef Py_ssize_t m = edges.shape[0], k = edges.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xa = np.array(x0, dtype=np.float64, copy=True)
    cdef Py_ssize_t n = xa.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ya = np.empty(n, dtype=np.float64)
    cdef double[::1] x = xa
    cdef double[::1] y = ya
    cdef double pre[64]
    cdef double acc, r, lo = 0.0, hi = 0.0, s, xk1, inv = 1.0 / (k - 1), invk = 1.0 / k
    cdef long it = 0
    cdef Py_ssize_t i, j, t
    cdef bint converged = False
    if k > 63:
        raise ValueError("k > 63 is not supported by the compiled kernel")
    with nogil:
        while it < max_iter:
            it += 1
            for i in range(n):
                y[i] = (diag * deg[i] + shift) * ipow(x[i], <int>(k - 1))
            for j in range(m):
                pre[0] = 1.0
                for t in range(k):
                    pre[t + 1] = pre[t] * x[edges[j, t]]
                acc = 1.0
                for t in range(k - 1, -1, -1):
                    y[edges[j, t]] += pre[t] * acc
                    acc *= x[edges[j, t]]
            for i in range(n):
                xk1 = ipow(x[i], <int>(k - 1))
                r = y[i] / xk1
                if i == 0 or r < lo:
                    lo = r
                if i == 0 or r > hi:
                    hi = r
            if hi - lo <= tol:
                converged = True
                break
            s = 0.0
            for i in range(n):
                x[i] = pow(y[i], inv)
                s += ipow(x[i], <int>k)
            s = pow(s, invk)
            for i in range(n):
                x[i] /= s
    return xa, lo - shift, hi - shift, it, bool(converged)
