"""Direct evaluation of the weighted exponential sums.

T(x) = sum_{p <= M^gamma} log p * e(x [p^c]) is the central object; W(X, x)
is its generic-coefficient analogue with floor phases, S(alpha) the
smooth-phase sum e(alpha n^c).  The truncated-decomposition majorant splits
|W| against three computable parts (spacing term, floor-phase harmonics,
complete smooth sums) so the bound can be exercised as a ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from pslab import _kernels
from pslab.arith import ProblemParams, _as_fraction, floor_powers, sieve_primes

_TWO_PI = 2.0 * math.pi
_EPS = np.finfo(np.float64).eps


@dataclass(frozen=True)
class ExpSumResult:
    value: complex
    terms: int
    sum_error: float


@dataclass
class CoefficientSeq:
    """Coefficients a_n on an integer range [lo, hi].

    `values` is either an explicit complex array (index 0 -> n = lo) or one of
    the named generators: "one", "vonmangoldt", "logprime".
    """

    lo: int
    hi: int
    values: object = "one"
    bound: float = 1.0

    def ns(self) -> np.ndarray:
        return np.arange(self.lo, self.hi + 1, dtype=np.int64)

    def array(self) -> np.ndarray:
        n = self.hi - self.lo + 1
        if isinstance(self.values, str):
            if self.values == "one":
                return np.ones(n, dtype=np.complex128)
            if self.values == "vonmangoldt":
                from pslab.arith import von_mangoldt

                return np.array(
                    [von_mangoldt(int(k)) for k in self.ns()], dtype=np.complex128
                )
            if self.values == "logprime":
                primes = set(sieve_primes(self.hi).primes.tolist())
                return np.array(
                    [math.log(k) if k in primes else 0.0 for k in self.ns()],
                    dtype=np.complex128,
                )
            raise ValueError(f"unknown generator {self.values!r}")
        arr = np.asarray(self.values, dtype=np.complex128)
        if len(arr) != n:
            raise ValueError("coefficient array length mismatch")
        return arr

    def check_bound(self) -> None:
        if np.max(np.abs(self.array()), initial=0.0) > self.bound + 1e-12:
            raise ValueError("coefficient exceeds declared bound")


def _sum_error(terms: int, max_coeff: float) -> float:
    # 4x safety over the naive terms * eps * max|coefficient| estimate
    return 4.0 * terms * _EPS * max_coeff


@lru_cache(maxsize=16)
def tsum_data(c: Fraction, bigM: int):
    """Primes p <= M^gamma with weights log p and certified floors [p^c]."""
    from pslab.arith import floor_pow

    limit = floor_pow(bigM, 1 / c).value
    primes = sieve_primes(limit).primes
    weights = np.log(primes.astype(np.float64)) if len(primes) else np.empty(0)
    floors = floor_powers(primes, c)
    return primes, weights, floors


def t_sum(params: ProblemParams, x: float) -> ExpSumResult:
    """T(x) = sum_{p <= M^gamma} log p * e(x [p^c])."""
    primes, weights, floors = tsum_data(params.c, params.bigM)
    if len(primes) == 0:
        return ExpSumResult(0j, 0, 0.0)
    value = _kernels.expsum_int_phase(floors, weights, float(x))
    return ExpSumResult(value, len(primes), _sum_error(len(primes), float(weights.max())))


def w_sum(coeffs: CoefficientSeq, c, x: float) -> ExpSumResult:
    """W = sum_n a_n e(x [n^c]) by direct compensated summation."""
    c = _as_fraction(c)
    arr = coeffs.array()
    floors = floor_powers(coeffs.ns(), c)
    re = _kernels.expsum_int_phase(floors, np.ascontiguousarray(arr.real), float(x))
    if np.any(arr.imag):
        im = _kernels.expsum_int_phase(floors, np.ascontiguousarray(arr.imag), float(x))
        value = re + 1j * im
    else:
        value = re
    mx = float(np.max(np.abs(arr), initial=0.0))
    return ExpSumResult(value, len(arr), _sum_error(len(arr), mx))


def smooth_phase_sum(alpha: float, c: float, a: int, b: int, weights=None) -> complex:
    """sum_{a <= n <= b} w_n e(alpha n^c) with real exponent phase."""
    if b < a:
        return 0j
    ns = np.arange(a, b + 1, dtype=np.float64)
    ph = np.mod(alpha * ns**c, 1.0)
    z = np.exp(2j * math.pi * ph)
    if weights is not None:
        z = z * np.asarray(weights)
    return complex(math.fsum(z.real), math.fsum(z.imag))


def smooth_sum(X: float, alpha: float, c, a: int, b: int) -> ExpSumResult:
    """S = sum_{a <= n <= b} e(alpha n^c)."""
    cf = float(_as_fraction(c)) if not isinstance(c, float) else c
    value = smooth_phase_sum(float(alpha), cf, a, b)
    terms = max(0, b - a + 1)
    return ExpSumResult(value, terms, _sum_error(terms, 1.0))


@dataclass
class MajorantReport:
    W_abs: float
    part_spacing: float
    part_floor_harmonics: float
    part_complete_sums: float
    total: float
    ratio: float
    h_max: int
    tail_bound: float
    tail_warning: bool


def lemma1_majorant(
    coeffs: CoefficientSeq, c, x: float, H: float, h_max: int | None = None, eps: float = 0.01
) -> MajorantReport:
    """Three-part majorant for W(X, x) from the truncated floor-phase
    decomposition.

    parts: X log X / H;  sum_{0<=h<=H} min(1, 1/h) |sum a_n e((h+g) n^c)|
    maximized over g in {x, -x} (h = 0 weight read as 1);  and
    sum_{h>=1} min(1/h, H/h^2) |sum e(h n^c)| truncated at h_max with tail
    bound sum_{h>h_max} (H/h^2) X <= H X / h_max recorded.
    """
    c = _as_fraction(c)
    cf = float(c)
    X = coeffs.hi
    if not 2 <= H <= X:
        raise ValueError("need 2 <= H <= X")
    if h_max is None:
        h_max = int(math.ceil(H * X**eps))
    if h_max < H:
        raise ValueError("h_max must be >= H")

    arr = coeffs.array()
    ns = coeffs.ns().astype(np.float64)
    ncs = ns**cf
    L = math.log(X)

    part1 = X * L / H

    def harmonic_part(g: float) -> float:
        tot = 0.0
        for h in range(0, int(math.floor(H)) + 1):
            wgt = 1.0 if h == 0 else min(1.0, 1.0 / h)
            ph = np.mod((h + g) * ncs, 1.0)
            z = arr * np.exp(2j * math.pi * ph)
            tot += wgt * abs(complex(math.fsum(z.real), math.fsum(z.imag)))
        return tot

    part2 = max(harmonic_part(x), harmonic_part(-x))

    part3 = 0.0
    for h in range(1, h_max + 1):
        wgt = min(1.0 / h, H / h**2)
        ph = np.mod(h * ncs, 1.0)
        part3 += wgt * abs(
            complex(math.fsum(np.cos(2 * math.pi * ph)), math.fsum(np.sin(2 * math.pi * ph)))
        )

    tail = H * X / h_max
    total = part1 + part2 + part3
    W = abs(w_sum(coeffs, c, x).value)
    return MajorantReport(
        W_abs=W,
        part_spacing=part1,
        part_floor_harmonics=part2,
        part_complete_sums=part3,
        total=total,
        ratio=W / total if total > 0 else math.inf,
        h_max=h_max,
        tail_bound=tail,
        tail_warning=tail > 0.01 * part3 if part3 > 0 else True,
    )
