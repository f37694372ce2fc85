"""Ground-truth enumeration of representations n = [p1^c] + [p2^c].

Counts use ordered pairs so the full-period integral identity for T(x)^2
holds without combinatorial factors.  Correctness of the exceptional list is
absolute: no sieving shortcut may misclassify R(n) = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from pslab import _kernels
from pslab.arith import ProblemParams, _as_fraction, floor_pow, floor_powers, sieve_primes


@dataclass(frozen=True)
class RepTable:
    c: Fraction
    N: int
    counts: np.ndarray  # ordered-pair representation counts R(n), index n
    weighted: np.ndarray  # R_w(n) = sum log p1 log p2 over the same pairs


@dataclass
class ExceptionalReport:
    N: int
    n0: int
    exceptional: list
    density: float
    dyadic_Z: dict  # M -> |{n in (M/2, M]: R(n) = 0}|


@lru_cache(maxsize=8)
def build_rep_table(c, N: int) -> RepTable:
    """All ordered prime-pair sums [p1^c] + [p2^c] <= N, for p <= N^gamma."""
    c = _as_fraction(c)
    if N < 4:
        raise ValueError("N must be >= 4")
    limit = floor_pow(N, 1 / c).value
    primes = sieve_primes(limit).primes
    if len(primes) == 0:
        return RepTable(c=c, N=N, counts=np.zeros(N + 1, dtype=np.int64), weighted=np.zeros(N + 1))
    floors = floor_powers(primes, c)
    weights = np.log(primes.astype(np.float64))
    counts, weighted = _kernels.pair_accumulate(
        np.ascontiguousarray(floors), np.ascontiguousarray(weights), N
    )
    return RepTable(c=c, N=N, counts=counts, weighted=weighted)


def exceptional_set(c, N: int, n0: int = 4) -> ExceptionalReport:
    """Non-representable n in [n0, N], with dyadic block counts Z(M)."""
    if not 4 <= n0 <= N:
        raise ValueError("need 4 <= n0 <= N")
    table = build_rep_table(c, N)
    exc = np.flatnonzero(table.counts[n0 : N + 1] == 0) + n0
    exc_list = [int(v) for v in exc]
    dyadic = {}
    M = N
    while M >= 2 * n0:
        lo = M // 2
        dyadic[M] = int(np.count_nonzero((exc > lo) & (exc <= M)))
        M //= 2
    return ExceptionalReport(
        N=N, n0=n0, exceptional=exc_list, density=len(exc_list) / N, dyadic_Z=dyadic
    )


@dataclass
class DensityTrend:
    N_list: list
    counts: list
    densities: list
    fitted_exponent: float | None
    sigma_reference: float
    monotone_nonincreasing: bool


def density_trend(c, N_list, n0: int = 4, sigma_variant: str = "theorem") -> DensityTrend:
    """|E_c(N)|/N over an ascending N grid, with a log-log least-squares
    exponent reported against 1 - sigma(c) (never asserted: the target is
    asymptotic and its implied constant is unknown)."""
    from pslab.arith import sigma_of_c

    N_list = sorted(int(N) for N in N_list)
    counts = []
    densities = []
    for N in N_list:
        rep = exceptional_set(c, N, n0)
        counts.append(len(rep.exceptional))
        densities.append(rep.density)
    fitted = None
    usable = [(N, k) for N, k in zip(N_list, counts) if k > 0]
    if len(usable) >= 2:
        xs = np.log([N for N, _ in usable])
        ys = np.log([k for _, k in usable])
        fitted = float(np.polyfit(xs, ys, 1)[0])
    mono = all(densities[i + 1] <= densities[i] + 1e-15 for i in range(len(densities) - 1))
    return DensityTrend(
        N_list=N_list,
        counts=counts,
        densities=densities,
        fitted_exponent=fitted,
        sigma_reference=1.0 - sigma_of_c(c, sigma_variant),
        monotone_nonincreasing=mono,
    )


@dataclass
class BoundRatioReport:
    complete_sum_rows: list  # (X, x, lhs, rhs, ratio)
    prime_sum_rows: list  # (X, x, |T|, rhs, ratio)
    max_complete_ratio: float
    max_prime_ratio: float
    H_complete: float
    H_prime: float
    Q: float


def bound_ratio_report(
    params: ProblemParams, x_grid=None, n_x: int = 64, seed: int = 1
) -> BoundRatioReport:
    """Direct LHS / target RHS ratios for the two minor-arc estimates:

    complete sums  sum_{n<=X} e(x [n^c])  vs  X^(2-c-c*sigma+eps/2)
                                              + X^(1-c) ||x||^-1,
    prime sums     T(x)                   vs  X^(1-c*sigma/2+eps/4),

    on an x grid over the complementary arc.  The associated cutoffs
    H = X^(c-1+c*sigma) (complete-sum path), H = X^(c*sigma/2) and
    Q = X^(c*sigma) (prime path) are reported alongside.
    """
    from pslab.arith import dist_nearest_int
    from pslab.expsum import CoefficientSeq, t_sum, w_sum

    cf = params.c_float
    sig = params.sigma
    eps = params.eps
    X = int(math.floor(params.bigX))
    omega = params.omega
    if x_grid is None:
        rng = np.random.default_rng(seed)
        x_grid = np.sort(rng.uniform(omega, 1.0 - omega, n_x))

    coeffs = CoefficientSeq(lo=1, hi=X, values="one")
    complete_rows = []
    prime_rows = []
    rhs_T = params.bigX ** (1.0 - cf * sig / 2.0 + eps / 4.0)
    for x in x_grid:
        x = float(x)
        lhs = abs(w_sum(coeffs, params.c, x).value)
        nrm = dist_nearest_int(x)
        rhs = params.bigX ** (2.0 - cf - cf * sig + eps / 2.0)
        if nrm > 0:
            rhs += params.bigX ** (1.0 - cf) / nrm
        complete_rows.append((X, x, lhs, rhs, lhs / rhs))
        tval = abs(t_sum(params, x).value)
        prime_rows.append((X, x, tval, rhs_T, tval / rhs_T))
    return BoundRatioReport(
        complete_sum_rows=complete_rows,
        prime_sum_rows=prime_rows,
        max_complete_ratio=max(r[4] for r in complete_rows),
        max_prime_ratio=max(r[4] for r in prime_rows),
        H_complete=params.cutoff_H_complete(),
        H_prime=params.cutoff_H_prime(),
        Q=params.cutoff_Q(),
    )
