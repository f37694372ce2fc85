# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: pairwise floor-sum accumulation and gridded
exponential sums.  Semantics mirror pslab._kernels._fallback exactly."""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin, floor, fabs

cnp.import_array()

cdef double TWO_PI = 6.283185307179586476925286766559


def pair_accumulate(cnp.int64_t[::1] floors, double[::1] weights, Py_ssize_t length):
    """Ordered-pair accumulation: for all (i, j) with s = floors[i]+floors[j]
    <= length, add 1 to counts[s] and weights[i]*weights[j] to wsum[s].
    `floors` must be ascending."""
    cdef Py_ssize_t n = floors.shape[0]
    counts_arr = np.zeros(length + 1, dtype=np.int64)
    wsum_arr = np.zeros(length + 1, dtype=np.float64)
    cdef cnp.int64_t[::1] counts = counts_arr
    cdef double[::1] wsum = wsum_arr
    cdef Py_ssize_t i, j
    cdef cnp.int64_t fi, s
    cdef double wi
    for i in range(n):
        fi = floors[i]
        if 2 * fi > length:
            break
        wi = weights[i]
        # diagonal
        counts[2 * fi] += 1
        wsum[2 * fi] += wi * wi
        for j in range(i + 1, n):
            s = fi + floors[j]
            if s > length:
                break
            counts[s] += 2
            wsum[s] += 2.0 * wi * weights[j]
    return counts_arr, wsum_arr


def expsum_int_phase(cnp.int64_t[::1] ks, double[::1] ws, double x):
    """Kahan-compensated sum of ws[i] * e(x * ks[i]), e(t) = exp(2*pi*i*t)."""
    cdef Py_ssize_t n = ks.shape[0]
    cdef double xr = x - floor(x)
    cdef double sr = 0.0, si = 0.0, cr = 0.0, ci = 0.0
    cdef double t, y, ph
    cdef Py_ssize_t i
    for i in range(n):
        ph = xr * ks[i]
        ph = TWO_PI * (ph - floor(ph))
        y = ws[i] * cos(ph) - cr
        t = sr + y
        cr = (t - sr) - y
        sr = t
        y = ws[i] * sin(ph) - ci
        t = si + y
        ci = (t - si) - y
        si = t
    return complex(sr, si)


def grid_abs_power_sum(cnp.int64_t[::1] ks, double[::1] ws, double x0,
                       double step, Py_ssize_t nnodes, int power):
    """Midpoint-rule accumulation of |T(x)|^power over nnodes nodes
    x_j = x0 + (j + 1/2) * step, with T(x) = sum ws[i] e(x ks[i])."""
    cdef Py_ssize_t n = ks.shape[0]
    cdef double acc = 0.0, comp = 0.0
    cdef double x, sr, si, ph, v, t, y
    cdef Py_ssize_t i, j
    for j in range(nnodes):
        x = x0 + (j + 0.5) * step
        x = x - floor(x)
        sr = 0.0
        si = 0.0
        for i in range(n):
            ph = x * ks[i]
            ph = TWO_PI * (ph - floor(ph))
            sr += ws[i] * cos(ph)
            si += ws[i] * sin(ph)
        v = sr * sr + si * si
        if power == 4:
            v = v * v
        elif power != 2:
            v = v ** (power / 2.0)
        y = v - comp
        t = acc + y
        comp = (t - acc) - y
        acc = t
    return acc


def sinc_kernel_sum(double[::1] wsum, cnp.int64_t n, double omega):
    """sum_s wsum[s] * I(s - n) with I(0) = 2*omega,
    I(d) = sin(2*pi*omega*d) / (pi*d):  the exact pairwise form of the
    central-interval integral of T(x)^2 e(-x n) over [-omega, omega]."""
    cdef Py_ssize_t L = wsum.shape[0]
    cdef double acc = 0.0, comp = 0.0
    cdef double d, kern, t, y
    cdef double pi = 3.14159265358979323846264338328
    cdef Py_ssize_t s
    for s in range(L):
        if wsum[s] == 0.0:
            continue
        d = <double> (s - n)
        if d == 0.0:
            kern = 2.0 * omega
        else:
            kern = sin(TWO_PI * omega * d) / (pi * d)
        y = wsum[s] * kern - comp
        t = acc + y
        comp = (t - acc) - y
        acc = t
    return acc
