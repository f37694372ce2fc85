"""Combinatorial decomposition of sum_{n<=X} Lambda(n) G(n).

Construction: the K-fold Moebius truncation with K = 3.  With
V = ceil(X^(1/3)) and M(s) = sum_{m<=V} mu(m) m^(-s), the Dirichlet-series
identity

    -zeta'/zeta = sum_{j=1}^{K} (-1)^(j-1) C(K,j) (-zeta') zeta^(j-1) M^j
                  + (-zeta'/zeta)(1 - zeta M)^K

has second-term coefficients supported on n > V^K >= X, so for every n <= X

    Lambda(n) = sum_{j=1}^{3} (-1)^(j-1) C(3,j)
                sum_{m_1..m_j <= V, n_1..n_j, prod = n}
                mu(m_1)..mu(m_j) log(n_1).

Each j-term is regrouped into bilinear component sums: the log-carrying
variable n_1 is split at z.  The n_1 >= z part keeps n_1 as the smooth
inner variable (Type I, weight log n); the n_1 < z part folds n_1 into the
outer variable (normalising log n_1 by log X into the scalar combination
coefficient) and exposes one Moebius factor m_1 <= V as the inner variable
(Type II).  Exactness holds for every G regardless of parameter sizes; the
Type I/II range conformity against (u, z, v) is checked and flagged, since
at desk scale the asymptotic size constraints routinely fail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

K_FOLD = 3
COEFF_BOUND_POW = 5  # stored coefficients must satisfy |a_m| <= d(m)^5


class RecombinationError(AssertionError):
    """Self-test failure: decomposition does not recombine to Lambda."""


@dataclass
class HBParams:
    u: float
    z: float
    v: float
    X: float

    def constraints(self) -> list:
        return [
            ("u >= 1", self.u >= 1.0),
            ("u^2 <= z", self.u * self.u <= self.z),
            ("128 u z^2 <= X", 128.0 * self.u * self.z * self.z <= self.X * (1 + 1e-12)),
            ("2^20 X <= v^3", (1 << 20) * self.X <= self.v**3 * (1 + 1e-12)),
        ]

    def all_ok(self) -> bool:
        return all(ok for _, ok in self.constraints())


def default_params(X: float, strict: bool = False) -> HBParams:
    """u = X^(1/5)/128, z = X^(2/5), v = 128 X^(1/3).

    Note 128 u z^2 = X exactly under these choices.  For X >= 2^60 every
    constraint holds strictly; below that the violated ones are reported
    (and raise when strict=True).
    """
    p = HBParams(u=X ** 0.2 / 128.0, z=X**0.4, v=128.0 * X ** (1.0 / 3.0), X=float(X))
    if strict and not p.all_ok():
        bad = [name for name, ok in p.constraints() if not ok]
        raise ValueError(f"size constraints violated: {', '.join(bad)}")
    return p


def _mobius_upto(V: int) -> np.ndarray:
    mu = np.ones(V + 1, dtype=np.int64)
    mu[0] = 0
    primes_mask = np.ones(V + 1, dtype=bool)
    for p in range(2, V + 1):
        if primes_mask[p]:
            primes_mask[2 * p :: p] = False
            mu[p::p] *= -1
            p2 = p * p
            if p2 <= V:
                mu[p2::p2] = 0
    return mu


def _divisor_counts(X: int) -> np.ndarray:
    d = np.zeros(X + 1, dtype=np.int64)
    for k in range(1, X + 1):
        d[k::k] += 1
    return d


def dirichlet_conv(a: np.ndarray, b: np.ndarray, X: int) -> np.ndarray:
    """(a * b)[s] = sum_{d | s} a[d] b[s/d], arrays indexed 1..X."""
    out = np.zeros(X + 1, dtype=np.float64)
    for d in range(1, X + 1):
        ad = a[d]
        if ad == 0.0:
            continue
        q = X // d
        out[d :: d] += ad * b[1 : q + 1]
    return out


@dataclass
class DecompTerm:
    """One bilinear component sum, evaluated as

    Type I:  scalar * sum_m a_m sum_{inner_lo(m) <= n <= X/m} (log n)^h G(mn)
    Type II: scalar * sum_m a_m sum_{inner_lo <= n <= inner_hi, mn <= X}
             b_n G(mn)
    """

    kind: str  # "TypeI" | "TypeII"
    X: int
    outer_coeffs: np.ndarray  # index m, length X+1
    scalar_coeff: float
    h: int = 0  # Type I smooth-weight exponent
    inner_lo: int = 1
    inner_hi: int = 0  # Type II only; Type I inner runs to X/m
    inner_coeffs: np.ndarray | None = None  # Type II b_n, indexed n
    range_conforming: bool = True
    _kernel: np.ndarray | None = field(default=None, repr=False)

    def kernel(self) -> np.ndarray:
        """k[t] = sum_{mn = t, n in range} a_m w(n); term value = scalar * k . G."""
        if self._kernel is None:
            X = self.X
            inner = np.zeros(X + 1, dtype=np.float64)
            if self.kind == "TypeI":
                ns = np.arange(self.inner_lo, X + 1)
                inner[self.inner_lo :] = np.log(ns.astype(np.float64)) ** self.h
            else:
                hi = min(self.inner_hi, X)
                if hi >= self.inner_lo:
                    inner[self.inner_lo : hi + 1] = self.inner_coeffs[self.inner_lo : hi + 1]
            self._kernel = dirichlet_conv(self.outer_coeffs, inner, X)
        return self._kernel


def eval_term(term: DecompTerm, G) -> complex:
    """The term's double sum restricted to mn <= X."""
    garr = _g_array(G, term.X)
    k = term.kernel()
    return term.scalar_coeff * complex(
        math.fsum(k * garr.real), math.fsum(k * garr.imag)
    )


def eval_term_direct(term: DecompTerm, G) -> complex:
    """Naive double-sum oracle (small X only)."""
    garr = _g_array(G, term.X)
    X = term.X
    total = 0j
    for m in range(1, X + 1):
        am = term.outer_coeffs[m]
        if am == 0.0:
            continue
        if term.kind == "TypeI":
            for n in range(term.inner_lo, X // m + 1):
                total += am * math.log(n) ** term.h * garr[m * n]
        else:
            for n in range(term.inner_lo, min(term.inner_hi, X // m) + 1):
                total += am * term.inner_coeffs[n] * garr[m * n]
    return term.scalar_coeff * total


def _g_array(G, X: int) -> np.ndarray:
    if isinstance(G, np.ndarray):
        if len(G) != X + 1:
            raise ValueError("G array must have length X+1 (index 0 unused)")
        return np.asarray(G, dtype=np.complex128)
    return np.array([0.0] + [G(t) for t in range(1, X + 1)], dtype=np.complex128)


@dataclass
class Decomposition:
    X: int
    params: HBParams
    terms: list
    n_type1: int
    n_type2: int
    params_ok: bool
    advisory: bool  # True when size constraints fail at this X

    def evaluate(self, G) -> complex:
        return sum((eval_term(t, G) for t in self.terms), 0j)


def lambda_array(X: int) -> np.ndarray:
    """Lambda(n) for n = 0..X (sieve-based)."""
    from pslab.arith import sieve_primes

    lam = np.zeros(X + 1, dtype=np.float64)
    for p in sieve_primes(X).primes:
        p = int(p)
        q = p
        while q <= X:
            lam[q] = math.log(p)
            q *= p
    return lam


def decompose(X: int, params: HBParams | None = None, self_test_G: int = 16, rng_seed: int = 7) -> Decomposition:
    """Exact decomposition of sum_{n<=X} Lambda(n) G(n) into Type I/II terms.

    The constructor verifies the coefficient bounds |a_m| <= d(m)^5,
    |b_n| <= d(n)^5 for every stored coefficient, and recombination against
    Lambda for `self_test_G` random bounded G, before returning.
    """
    if X < 2:
        raise ValueError("X must be >= 2")
    if params is None:
        params = default_params(X)
    V = int(math.ceil(X ** (1.0 / 3.0)))
    while V**K_FOLD < X:  # guard against float underestimation of X^(1/3)
        V += 1
    L = math.log(X)
    zc = max(2, math.ceil(params.z))  # Type I inner starts here; log 1 = 0 anyway
    uc = max(1, math.ceil(params.u))

    mu = _mobius_upto(V)
    muV = np.zeros(X + 1, dtype=np.float64)
    muV[1 : V + 1] = mu[1 : min(V, X) + 1]
    one = np.ones(X + 1, dtype=np.float64)
    one[0] = 0.0
    # log(n1)/log X on n1 < zc, folded into the Type II outer variable
    logsmall = np.zeros(X + 1, dtype=np.float64)
    if zc > 2:
        ns = np.arange(2, zc)
        logsmall[2:zc] = np.log(ns.astype(np.float64)) / L

    d5 = _divisor_counts(X).astype(np.float64) ** COEFF_BOUND_POW

    terms: list[DecompTerm] = []
    for j in range(1, K_FOLD + 1):
        cj = (-1) ** (j - 1) * math.comb(K_FOLD, j)
        # A_j = muV^(*j) * 1^(*(j-1)): outer coefficients of the Type I term
        A = muV.copy()
        for _ in range(j - 1):
            A = dirichlet_conv(A, muV, X)
        for _ in range(j - 1):
            A = dirichlet_conv(A, one, X)
        _assert_coeff_bound(A, d5, f"TypeI outer (j={j})")
        terms.append(
            DecompTerm(
                kind="TypeI",
                X=X,
                outer_coeffs=A,
                scalar_coeff=float(cj),
                h=1,
                inner_lo=zc,
                range_conforming=True,
            )
        )
        # Type II: fold n_1 < z into the outer variable, inner = one Moebius
        # factor m_1 <= V.  Outer coefficient C = logsmall * B_j with
        # B_j = muV^(*(j-1)) * 1^(*(j-1)).
        B = np.zeros(X + 1, dtype=np.float64)
        B[1] = 1.0
        for _ in range(j - 1):
            B = dirichlet_conv(B, muV, X)
        for _ in range(j - 1):
            B = dirichlet_conv(B, one, X)
        C = dirichlet_conv(logsmall, B, X)
        _assert_coeff_bound(C, d5, f"TypeII outer (j={j})")
        inner = np.zeros(X + 1, dtype=np.float64)
        inner[1 : V + 1] = mu[1 : min(V, X) + 1]
        lo_main = min(uc, V + 1)
        if lo_main > 1:
            # residual [1, uc) part when u > 1: exact but out of range
            terms.append(
                DecompTerm(
                    kind="TypeII",
                    X=X,
                    outer_coeffs=C,
                    scalar_coeff=float(cj) * L,
                    inner_lo=1,
                    inner_hi=lo_main - 1,
                    inner_coeffs=inner,
                    range_conforming=False,
                )
            )
        if lo_main <= V:
            terms.append(
                DecompTerm(
                    kind="TypeII",
                    X=X,
                    outer_coeffs=C,
                    scalar_coeff=float(cj) * L,
                    inner_lo=lo_main,
                    inner_hi=V,
                    inner_coeffs=inner,
                    range_conforming=V <= params.v,
                )
            )

    dec = Decomposition(
        X=X,
        params=params,
        terms=terms,
        n_type1=sum(1 for t in terms if t.kind == "TypeI"),
        n_type2=sum(1 for t in terms if t.kind == "TypeII"),
        params_ok=params.all_ok(),
        advisory=not (params.all_ok() and all(t.range_conforming for t in terms)),
    )
    _self_test(dec, self_test_G, rng_seed)
    return dec


def term_counts(X: int, params: HBParams | None = None) -> tuple:
    """(n_type1, n_type2) that decompose(X, params) would produce, without
    materialising coefficient arrays (used for growth tracking at large X)."""
    if params is None:
        params = default_params(X)
    V = int(math.ceil(X ** (1.0 / 3.0)))
    while V**K_FOLD < X:
        V += 1
    uc = max(1, math.ceil(params.u))
    n1 = K_FOLD
    per_j = (1 if min(uc, V + 1) > 1 else 0) + (1 if min(uc, V + 1) <= V else 0)
    return n1, K_FOLD * per_j


def _assert_coeff_bound(coeffs: np.ndarray, d5: np.ndarray, label: str) -> None:
    bad = np.abs(coeffs[1:]) > d5[1:] + 1e-9
    if np.any(bad):
        m = int(np.flatnonzero(bad)[0]) + 1
        raise AssertionError(
            f"{label}: |a_{m}| = {abs(coeffs[m]):.6g} exceeds d({m})^5 = {d5[m]:.6g}"
        )


def _self_test(dec: Decomposition, n_g: int, seed: int) -> None:
    lam = lambda_array(dec.X)
    scale = max(float(np.sum(lam)), 1.0)
    rng = np.random.default_rng(seed)
    for _ in range(n_g):
        garr = np.zeros(dec.X + 1, dtype=np.complex128)
        garr[1:] = rng.uniform(-1, 1, dec.X) + 1j * rng.uniform(-1, 1, dec.X)
        want = complex(math.fsum(lam * garr.real), math.fsum(lam * garr.imag))
        got = dec.evaluate(garr)
        if abs(got - want) > 1e-9 * scale:
            raise RecombinationError(
                f"recombination residual {abs(got - want):.3e} at X={dec.X}"
            )
