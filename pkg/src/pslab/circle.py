"""Central-interval and complementary-arc analytics.

T(x) is a finite exponential sum with integer phases, so the interval
integral of T(x)^2 e(-xn) over [-omega, omega] collapses to the exact
pairwise form

    sum_{p1, p2 <= M^gamma} log p1 log p2 * I([p1^c] + [p2^c] - n),
    I(0) = 2 omega,  I(d) = sin(2 pi omega d) / (pi d),

with the kernel aggregated over distinct pair sums.  The full-period version
is orthogonality: only pairs with [p1^c] + [p2^c] = n survive, giving the
weighted representation count.  Complementary-arc moments have no closed
form and use midpoint quadrature at an oscillation-resolving step, validated
by step halving.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

import numpy as np

from pslab import _kernels
from pslab.arith import ProblemParams, gamma_fn
from pslab.expsum import tsum_data


class GridTooCoarseError(RuntimeError):
    """Step-halved quadrature estimates disagree by more than 5%."""


@dataclass(frozen=True)
class ArcDecomposition:
    omega: float

    @property
    def major(self) -> tuple:
        return (-self.omega, self.omega)

    @property
    def minor(self) -> tuple:
        return (self.omega, 1.0 - self.omega)


@dataclass(frozen=True)
class QuadratureGrid:
    lo: float
    hi: float
    step: float
    rule: str = "midpoint"

    @property
    def n_nodes(self) -> int:
        return max(1, int(round((self.hi - self.lo) / self.step)))


@lru_cache(maxsize=8)
def pair_spectrum(c: Fraction, bigM: int):
    """counts[s], wsum[s] over ordered prime pairs: s = [p1^c] + [p2^c],
    weights log p1 log p2, for all s up to 2*max[p^c]."""
    primes, weights, floors = tsum_data(c, bigM)
    if len(primes) == 0:
        return np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.float64)
    length = int(2 * floors[-1])
    counts, wsum = _kernels.pair_accumulate(
        np.ascontiguousarray(floors), np.ascontiguousarray(weights), length
    )
    return counts, wsum


def major_arc_integral_exact(params: ProblemParams, n: int) -> float:
    """Exact integral of T(x)^2 e(-xn) over [-omega, omega] (real by
    symmetry of the interval)."""
    _, wsum = pair_spectrum(params.c, params.bigM)
    return float(_kernels.sinc_kernel_sum(wsum, int(n), params.omega))


def main_term(n: int, gamma: float) -> float:
    """Gamma(1+g)^2 / Gamma(2g) * n^(2g-1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return gamma_fn(1.0 + gamma) ** 2 / gamma_fn(2.0 * gamma) * float(n) ** (2.0 * gamma - 1.0)


def full_period_rep_identity(params: ProblemParams, n: int) -> tuple:
    """(integral, direct): the full-period integral of T(x)^2 e(-xn) by
    orthogonality, and the enumerated weighted representation count.  The
    two are the same mathematical quantity and must agree."""
    from pslab.exceptional import build_rep_table

    _, wsum = pair_spectrum(params.c, params.bigM)
    integral = float(wsum[n]) if 0 <= n < len(wsum) else 0.0
    table = build_rep_table(params.c, params.bigM)
    direct = float(table.weighted[n]) if n <= table.N else 0.0
    return integral, direct


def default_step(params: ProblemParams) -> float:
    """Oscillation-resolving step: the fastest phase in |T|^power e(-xn)
    integrands is bounded by 2*max[p^c] + M."""
    _, _, floors = tsum_data(params.c, params.bigM)
    maxphase = (2 * int(floors[-1]) if len(floors) else 0) + params.bigM
    return min(params.omega / 8.0, 1.0 / (16.0 * maxphase))


def _moment_quadrature(params: ProblemParams, power: int, lo: float, hi: float, step: float) -> float:
    _, weights, floors = tsum_data(params.c, params.bigM)
    if len(floors) == 0:
        return 0.0
    nnodes = max(1, int(math.ceil((hi - lo) / step)))
    h = (hi - lo) / nnodes
    total = _kernels.grid_abs_power_sum(
        np.ascontiguousarray(floors), np.ascontiguousarray(weights), lo, h, nnodes, power
    )
    return total * h


@dataclass
class MomentReport:
    value: float
    coarse: float
    rel_change: float
    step: float
    n_nodes: int


def minor_arc_moment(
    params: ProblemParams,
    power: int = 4,
    step: float | None = None,
    lo: float | None = None,
    hi: float | None = None,
    tol: float = 0.05,
) -> MomentReport:
    """Quadrature of the moment integral of |T|^power over [omega, 1-omega]
    (or an explicit interval), with a step-halving discretization check."""
    if power not in (2, 4):
        raise ValueError("power must be 2 or 4")
    if lo is None:
        lo = params.omega
    if hi is None:
        hi = 1.0 - params.omega
    if step is None:
        step = default_step(params)
    coarse = _moment_quadrature(params, power, lo, hi, step)
    fine = _moment_quadrature(params, power, lo, hi, step / 2.0)
    denom = max(abs(fine), 1e-300)
    rel = abs(fine - coarse) / denom
    if rel > tol:
        raise GridTooCoarseError(
            f"step-halved moment estimates differ by {rel:.2%} (> {tol:.0%})"
        )
    nn = int(math.ceil((hi - lo) / (step / 2.0)))
    return MomentReport(value=fine, coarse=coarse, rel_change=rel, step=step / 2.0, n_nodes=nn)


def parseval_closed_form(params: ProblemParams) -> float:
    """Full-period integral of |T|^2 = sum_p (log p)^2, via the pairwise
    spectrum (only equal-floor pairs survive)."""
    # full-period kernel is the delta at d = 0: only equal-floor pairs survive
    _, weights, floors = tsum_data(params.c, params.bigM)
    by_floor = {}
    for f, w in zip(floors.tolist(), weights.tolist()):
        by_floor[f] = by_floor.get(f, 0.0) + w
    return math.fsum(v * v for v in by_floor.values())


@dataclass
class Lemma5Report:
    lhs: float
    rhs: float
    ratio: float
    B: float
    B_hi: float
    clipped: bool
    rel_change: float


def lemma5_check(coeffs, c, B: float, step: float | None = None, tol: float = 0.05) -> Lemma5Report:
    """Mean-square of V(y) = sum a_n e([n^c] y) over [B, 2B] against
    X*B + X^(2-c) log X."""
    from pslab.arith import _as_fraction, floor_powers

    if not 0.0 < B < 1.0:
        raise ValueError("need 0 < B < 1")
    c = _as_fraction(c)
    hi = min(2.0 * B, 1.0)
    clipped = hi < 2.0 * B
    arr = coeffs.array()
    if np.any(arr.imag):
        raise ValueError("lemma5_check supports real coefficient sequences")
    ws = np.ascontiguousarray(arr.real)
    ks = np.ascontiguousarray(floor_powers(coeffs.ns(), c))
    X = coeffs.hi
    if step is None:
        step = 1.0 / (32.0 * max(int(ks[-1]), 1))

    def quad(h):
        nn = max(1, int(math.ceil((hi - B) / h)))
        hh = (hi - B) / nn
        return _kernels.grid_abs_power_sum(ks, ws, B, hh, nn, 2) * hh

    coarse = quad(step)
    fine = quad(step / 2.0)
    rel = abs(fine - coarse) / max(abs(fine), 1e-300)
    if rel > tol:
        raise GridTooCoarseError(f"step-halved estimates differ by {rel:.2%}")
    cf = float(c)
    rhs = X * B + X ** (2.0 - cf) * math.log(X)
    return Lemma5Report(
        lhs=fine, rhs=rhs, ratio=fine / rhs, B=B, B_hi=hi, clipped=clipped, rel_change=rel
    )


@dataclass
class BesselReport:
    sample_size: int
    sum_sq_minor_integrals: float
    fourth_moment: float
    ok: bool
    tolerance: float


def bessel_link(params: ProblemParams, sample_n, tol: float = 0.05) -> BesselReport:
    """sum_n |integral of T^2 e(-xn) over the complementary arc|^2 <=
    integral of |T|^4 over the same arc (orthogonality over the full period
    turns the left side into Fourier coefficients of T^2 restricted to the
    arc; the inequality is Bessel's)."""
    _, wsum = pair_spectrum(params.c, params.bigM)
    terms = []
    for n in sample_n:
        n = int(n)
        full = float(wsum[n]) if 0 <= n < len(wsum) else 0.0
        minor = full - major_arc_integral_exact(params, n)
        terms.append(minor * minor)
    lhs = math.fsum(terms)
    rhs = minor_arc_moment(params, power=4, tol=tol).value
    return BesselReport(
        sample_size=len(terms),
        sum_sq_minor_integrals=lhs,
        fourth_moment=rhs,
        ok=lhs <= rhs * (1.0 + tol),
        tolerance=tol,
    )
