"""Pure numpy kernels, used when the compiled core is unavailable.

Same contracts as _core; slower on large inputs but identical semantics to
floating-point reassociation (backend agreement is tested to 1e-9 relative).
"""

from __future__ import annotations

import math

import numpy as np

_TWO_PI = 2.0 * math.pi
_CHUNK = 1 << 16


def pair_accumulate(floors: np.ndarray, weights: np.ndarray, length: int):
    floors = np.ascontiguousarray(floors, dtype=np.int64)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    counts = np.zeros(length + 1, dtype=np.int64)
    wsum = np.zeros(length + 1, dtype=np.float64)
    n = len(floors)
    for i in range(n):
        fi = int(floors[i])
        if 2 * fi > length:
            break
        counts[2 * fi] += 1
        wsum[2 * fi] += weights[i] * weights[i]
        rest_f = floors[i + 1 :]
        hi = np.searchsorted(rest_f, length - fi, side="right")
        if hi == 0:
            continue
        idx = fi + rest_f[:hi]
        np.add.at(counts, idx, 2)
        np.add.at(wsum, idx, 2.0 * weights[i] * weights[i + 1 : i + 1 + hi])
    return counts, wsum


def expsum_int_phase(ks: np.ndarray, ws: np.ndarray, x: float) -> complex:
    ks = np.asarray(ks, dtype=np.int64)
    ws = np.asarray(ws, dtype=np.float64)
    xr = x - math.floor(x)
    ph = _TWO_PI * np.mod(xr * ks.astype(np.float64), 1.0)
    return complex(math.fsum(ws * np.cos(ph)), math.fsum(ws * np.sin(ph)))


def grid_abs_power_sum(ks, ws, x0: float, step: float, nnodes: int, power: int) -> float:
    ks = np.asarray(ks, dtype=np.float64)
    ws = np.asarray(ws, dtype=np.float64)
    acc = 0.0
    comp = 0.0
    for start in range(0, nnodes, _CHUNK):
        stop = min(start + _CHUNK, nnodes)
        xs = x0 + (np.arange(start, stop, dtype=np.float64) + 0.5) * step
        ph = _TWO_PI * np.mod(np.mod(xs, 1.0)[:, None] * ks[None, :], 1.0)
        re = np.cos(ph) @ ws
        im = np.sin(ph) @ ws
        v = re * re + im * im
        if power == 4:
            v = v * v
        elif power != 2:
            v = v ** (power / 2.0)
        for val in v:  # keep the same compensated accumulation order as _core
            y = val - comp
            t = acc + y
            comp = (t - acc) - y
            acc = t
    return acc


def sinc_kernel_sum(wsum: np.ndarray, n: int, omega: float) -> float:
    wsum = np.asarray(wsum, dtype=np.float64)
    nz = np.flatnonzero(wsum)
    d = nz.astype(np.float64) - float(n)
    kern = np.empty_like(d)
    zero = d == 0.0
    kern[zero] = 2.0 * omega
    kern[~zero] = np.sin(_TWO_PI * omega * d[~zero]) / (math.pi * d[~zero])
    return math.fsum(wsum[nz] * kern)
