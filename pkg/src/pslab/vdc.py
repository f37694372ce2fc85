"""Estimate toolkit: first-derivative (Kusmin-Landau) test, the iterated
l-th derivative test, the stationary-phase (B-process) transform, the
high-order k-th derivative bound, and the shift-and-difference (A-process)
inequality.  Each bound comes as an evaluator plus an empirical checker
against direct summation; asymptotic hypotheses (the ~ and << conditions)
are verified by sampling, and a violation downgrades a verdict to ADVISORY
rather than failing, since the implied constants are not canonical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from pslab.arith import _as_fraction, dist_nearest_int
from pslab.expsum import smooth_phase_sum

_HYP_SAMPLES = 64
_HYP_WINDOW = (1.0 / 8.0, 8.0)


class HypothesisViolation(ValueError):
    """A sampled derivative-magnitude hypothesis failed."""


@dataclass
class PhaseFunction:
    """Real phase with derivative oracles up to order 5.

    F is the magnitude parameter normalised so |f^(r)(x)| ~ F X^-r on the
    dyadic block [X/2, X]; lambda_k the order-k derivative magnitude.
    """

    f: object
    deriv: object  # (order, x) -> f^(order)(x)
    F: float
    X: float
    domain: tuple
    lambda_k: float = 0.0

    def negated(self) -> "PhaseFunction":
        return PhaseFunction(
            f=lambda x: -self.f(x),
            deriv=lambda r, x: -self.deriv(r, x),
            F=self.F,
            X=self.X,
            domain=self.domain,
            lambda_k=self.lambda_k,
        )


def power_phase(alpha: float, c: float, X: float, domain: tuple | None = None) -> PhaseFunction:
    """f(x) = alpha * x^c with analytic derivatives; F = |alpha| X^c."""
    if domain is None:
        domain = (X / 2.0, X)

    def f(x):
        return alpha * x**c

    def deriv(r, x):
        coef = alpha
        for i in range(r):
            coef *= c - i
        return coef * x ** (c - r)

    return PhaseFunction(f=f, deriv=deriv, F=abs(alpha) * X**c, X=X, domain=domain)


def _sample_points(a: float, b: float, n: int = _HYP_SAMPLES) -> np.ndarray:
    return np.linspace(a, b, n)


def check_derivative_scale(phase: PhaseFunction, orders, a: float, b: float) -> bool:
    """|f^(r)(x)| * X^r / F within [1/8, 8] at 64 equispaced points."""
    lo, hi = _HYP_WINDOW
    for r in orders:
        for x in _sample_points(a, b):
            ratio = abs(phase.deriv(r, x)) * phase.X**r / phase.F
            if not lo <= ratio <= hi:
                return False
    return True


@dataclass
class KusminLandauReport:
    sum_abs: float
    lam: float
    bound: float
    verdict: str  # PASS / FAIL


def kusmin_landau_check(phase: PhaseFunction, a: int, b: int) -> KusminLandauReport:
    """|sum e(f(n))| against cot(pi*lam/2) where lam = min ||f'(n)||.

    Requires f' monotone on [a, b] with ||f'|| bounded away from integers.
    """
    ns = np.arange(a, b + 1)
    fps = np.array([phase.deriv(1, float(n)) for n in ns])
    diffs = np.diff(fps)
    if len(diffs) and not (np.all(diffs >= 0) or np.all(diffs <= 0)):
        raise HypothesisViolation("f' not monotone on the summation range")
    lam = min(dist_nearest_int(float(v)) for v in fps)
    if lam <= 1e-12:
        raise HypothesisViolation("||f'|| vanishes at an integer point")
    z = [complex(math.cos(2 * math.pi * phase.f(float(n))), math.sin(2 * math.pi * phase.f(float(n)))) for n in ns]
    s = abs(complex(math.fsum(v.real for v in z), math.fsum(v.imag for v in z)))
    bound = 1.0 / math.tan(math.pi * lam / 2.0)
    return KusminLandauReport(sum_abs=s, lam=lam, bound=bound, verdict="PASS" if s <= bound else "FAIL")


def lemma2_bound(F: float, X: float, ell: int) -> float:
    """Iterated-differencing derivative test: F^(1/(4L-2)) X^(1-(l+2)/(4L-2))
    + X/F with L = 2^ell."""
    if ell < 0:
        raise ValueError("ell must be >= 0")
    if F <= 0 or X < 2:
        raise ValueError("need F > 0 and X >= 2")
    L = 2**ell
    q = 4 * L - 2
    return F ** (1.0 / q) * X ** (1.0 - (ell + 2.0) / q) + X / F


@dataclass
class DerivativeTestReport:
    sum_abs: float
    bound: float
    ratio: float
    status: str  # OK / ADVISORY


def lemma2_check(phase: PhaseFunction, a: int, b: int, ell: int) -> DerivativeTestReport:
    ok = check_derivative_scale(phase, range(1, ell + 3), float(a), float(b))
    s = abs(smooth_phase_sum_from_phase(phase, a, b))
    bound = lemma2_bound(phase.F, phase.X, ell)
    return DerivativeTestReport(
        sum_abs=s, bound=bound, ratio=s / bound, status="OK" if ok else "ADVISORY"
    )


def smooth_phase_sum_from_phase(phase: PhaseFunction, a: int, b: int) -> complex:
    if b < a:
        return 0j
    vals = [phase.f(float(n)) for n in range(a, b + 1)]
    re = math.fsum(math.cos(2 * math.pi * v) for v in vals)
    im = math.fsum(math.sin(2 * math.pi * v) for v in vals)
    return complex(re, im)


@dataclass
class BProcessOutput:
    transformed_sum: complex
    direct_sum: complex
    stationary_points: list = field(default_factory=list)  # (nu, x_nu, phi, |f''|^-1/2)
    error_budget: float = 0.0  # log(F/X + 2) + X F^(-1/2), unit constant
    discrepancy: float = 0.0
    c_fitted: float = 0.0
    budget_sqrtX: float = 0.0  # the X^(1/2) simplification valid when F >= X


def _find_xnu(phase: PhaseFunction, nu: float, a: float, b: float) -> float:
    """Solve f'(x) = nu on [a,b]: bracketed bisection to 1e-6, Newton polish."""
    fa = phase.deriv(1, a) - nu
    fb = phase.deriv(1, b) - nu
    if fa == 0.0:
        x = a
    elif fb == 0.0:
        x = b
    else:
        if fa * fb > 0:
            raise ValueError("stationary point not bracketed; f' not monotone?")
        lo, hi = a, b
        while hi - lo > 1e-6:
            mid = 0.5 * (lo + hi)
            fm = phase.deriv(1, mid) - nu
            if fm == 0.0:
                lo = hi = mid
                break
            if fa * fm < 0:
                hi = mid
            else:
                lo, fa = mid, fm
        x = 0.5 * (lo + hi)
    for _ in range(60):
        g = phase.deriv(1, x) - nu
        if abs(g) <= 1e-13 * max(1.0, abs(nu)):
            break
        step = g / phase.deriv(2, x)
        x -= step
        x = min(max(x, a), b)
    if abs(phase.deriv(1, x) - nu) > 1e-10 * max(1.0, abs(nu)):
        raise ValueError(f"Newton polish failed for nu={nu}")
    return x


def b_process(phase: PhaseFunction, a: int, b: int) -> BProcessOutput:
    """Stationary-phase transform of sum_{a<=n<=b} e(f(n)) for f'' < 0:

        sum_n e(f(n)) = sum_{f'(b) <= nu <= f'(a)} e(phi(nu) - 1/8)
                        / |f''(x_nu)|^(1/2) + O(log(F/X+2) + X F^(-1/2))

    with f'(x_nu) = nu and phi(nu) = -f(x_nu) + nu x_nu.
    """
    for x in _sample_points(float(a), float(b)):
        if phase.deriv(2, x) >= 0:
            raise HypothesisViolation("f'' >= 0 detected; use b_process_conjugate")
    lo = phase.deriv(1, float(b))
    hi = phase.deriv(1, float(a))
    nus = range(math.ceil(lo), math.floor(hi) + 1)
    pts = []
    re = []
    im = []
    for nu in nus:
        x_nu = _find_xnu(phase, float(nu), float(a), float(b))
        phi = -phase.f(x_nu) + nu * x_nu
        amp = 1.0 / math.sqrt(abs(phase.deriv(2, x_nu)))
        pts.append((nu, x_nu, phi, amp))
        re.append(amp * math.cos(2 * math.pi * (phi - 0.125)))
        im.append(amp * math.sin(2 * math.pi * (phi - 0.125)))
    transformed = complex(math.fsum(re), math.fsum(im))
    direct = smooth_phase_sum_from_phase(phase, a, b)
    F, X = phase.F, phase.X
    budget = math.log(F / X + 2.0) + X / math.sqrt(F)
    disc = abs(direct - transformed)
    return BProcessOutput(
        transformed_sum=transformed,
        direct_sum=direct,
        stationary_points=pts,
        error_budget=budget,
        discrepancy=disc,
        c_fitted=disc / budget,
        budget_sqrtX=math.sqrt(X),
    )


def b_process_conjugate(phase: PhaseFunction, a: int, b: int) -> BProcessOutput:
    """B-process for f'' > 0 phases: apply to -f and conjugate the result."""
    out = b_process(phase.negated(), a, b)
    pts = [(nu, x, -phi, amp) for (nu, x, phi, amp) in out.stationary_points]
    return BProcessOutput(
        transformed_sum=out.transformed_sum.conjugate(),
        direct_sum=out.direct_sum.conjugate(),
        stationary_points=pts,
        error_budget=out.error_budget,
        discrepancy=out.discrepancy,
        c_fitted=out.c_fitted,
        budget_sqrtX=out.budget_sqrtX,
    )


def lemma4_bound(N: float, lambda_k: float, k: int, eps: float) -> float:
    """High-order derivative test, k >= 3:

    N^(1+eps) (lam^(1/(k(k-1))) + N^(-1/(k(k-1))) + N^(-2/(k(k-1))) lam^(-2/(k^2(k-1))))
    """
    if k < 3:
        raise ValueError("k must be >= 3")
    kk = k * (k - 1)
    return N ** (1.0 + eps) * (
        lambda_k ** (1.0 / kk)
        + N ** (-1.0 / kk)
        + N ** (-2.0 / kk) * lambda_k ** (-2.0 / (k * kk))
    )


@dataclass
class AProcessReport:
    lhs: float
    rhs: float
    ratio: float
    term_X2_over_Q: float
    term_shifted: float


def a_process_check(
    Z: int, Y: int, b_n: np.ndarray, alpha: float, c, Q: int, X: float | None = None
) -> AProcessReport:
    """Shift-and-difference (Weyl/Cauchy-Schwarz) inequality, evaluated on
    both sides:

      |S|^2 <= X^2/Q + (X/Q) sum_{q<=Q} sum_{Y<n<=2Y}
               |sum_{m in I(n,q)} e(alpha m^c ((n+q)^c - n^c))|

    with S = sum_{Z<=m<=2Z} |sum_{Y<n<=2Y, mn<=X} b_n e(alpha (mn)^c)| and
    I(n,q) the sub-range of [Z, 2Z] where both mn and m(n+q) stay <= X.
    """
    cf = float(_as_fraction(c)) if not isinstance(c, float) else c
    if X is None:
        X = float(4 * Z * Y)
    b_n = np.asarray(b_n, dtype=np.complex128)
    ns = np.arange(Y + 1, 2 * Y + 1)
    S = 0.0
    for m in range(Z, 2 * Z + 1):
        sel = m * ns <= X
        if not np.any(sel):
            continue
        mn = (m * ns[sel]).astype(np.float64)
        ph = np.mod(alpha * mn**cf, 1.0)
        z = b_n[sel] * np.exp(2j * math.pi * ph)
        S += abs(complex(math.fsum(z.real), math.fsum(z.imag)))
    lhs = S * S

    shifted = 0.0
    ms = np.arange(Z, 2 * Z + 1, dtype=np.float64)
    for q in range(1, Q + 1):
        for n in ns:
            msel = ms[(ms * n <= X) & (ms * (n + q) <= X)]
            if len(msel) == 0:
                continue
            dphase = alpha * ((n + q) ** cf - float(n) ** cf)
            ph = np.mod(dphase * msel**cf, 1.0)
            shifted += abs(
                complex(
                    math.fsum(np.cos(2 * math.pi * ph)), math.fsum(np.sin(2 * math.pi * ph))
                )
            )
    rhs = X * X / Q + (X / Q) * shifted
    return AProcessReport(
        lhs=lhs,
        rhs=rhs,
        ratio=lhs / rhs if rhs > 0 else math.inf,
        term_X2_over_Q=X * X / Q,
        term_shifted=(X / Q) * shifted,
    )
