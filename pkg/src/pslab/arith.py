"""Exact integer / special-function substrate.

Everything downstream (exponential sums, representation tables, major-arc
kernels) leans on two guarantees provided here:

* prime tables are complete and exact,
* floor powers [n^c] are certified: the floor is resolved in directed-rounding
  interval arithmetic, never by naive double-precision rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2
import numpy as np

C_UPPER = Fraction(24, 19)

# Directed-rounding precision ladder (bits).  Bounded worst case: if the top
# rung cannot separate [n^c] from an integer we raise instead of rounding.
_PRECISION_LADDER = (64, 128, 256, 1024)


class FloorCertificationError(ArithmeticError):
    """The floor of n^c could not be certified at maximum precision."""


@dataclass(frozen=True)
class PrimeTable:
    """All primes <= limit, plus the Chebyshev theta sum."""

    limit: int
    primes: np.ndarray
    chebyshev_theta: float

    def __len__(self) -> int:
        return len(self.primes)


@dataclass(frozen=True)
class FloorPower:
    n: int
    c: Fraction
    value: int
    certified: bool


def _simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def sieve_primes(limit: int, segment_size: int = 1 << 22) -> PrimeTable:
    """Complete prime table up to `limit`, segmented above `segment_size`."""
    if limit < 0:
        raise ValueError("limit must be >= 0")
    if limit <= segment_size:
        primes = _simple_sieve(limit)
    else:
        base = _simple_sieve(math.isqrt(limit))
        chunks = [base[base <= limit]] if len(base) else []
        low = math.isqrt(limit) + 1
        while low <= limit:
            high = min(low + segment_size - 1, limit)
            mask = np.ones(high - low + 1, dtype=bool)
            for p in base:
                p = int(p)
                start = max(p * p, ((low + p - 1) // p) * p)
                if start > high:
                    continue
                mask[start - low :: p] = False
            chunks.append(np.flatnonzero(mask).astype(np.int64) + low)
            low = high + 1
        primes = np.concatenate(chunks) if chunks else np.array([], dtype=np.int64)
    theta = float(np.sum(np.log(primes.astype(np.float64)))) if len(primes) else 0.0
    return PrimeTable(limit=limit, primes=primes, chebyshev_theta=theta)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(
        f"exponent must be an exact rational (Fraction, int or 'a/b' string), got {type(c).__name__}"
    )


def floor_pow(n: int, c) -> FloorPower:
    """Certified [n^c] for exact rational c = a/b.

    n^(a/b) is an integer iff n is a perfect b-th power; that case is resolved
    exactly.  Otherwise n^c is bracketed by evaluating with round-down and
    round-up at increasing precision until both endpoints share a floor.
    """
    c = _as_fraction(c)
    if n < 1:
        raise ValueError("n must be >= 1")
    a, b = c.numerator, c.denominator
    if n == 1:
        return FloorPower(n=n, c=c, value=1, certified=True)
    root, exact = gmpy2.iroot(gmpy2.mpz(n), b)
    if exact:
        return FloorPower(n=n, c=c, value=int(root**a), certified=True)
    # n^(a/b) irrational: the bracket can always be narrowed off an integer.
    na = gmpy2.mpz(n) ** a
    for prec in _PRECISION_LADDER:
        with gmpy2.context(precision=prec, round=gmpy2.RoundDown):
            lo = gmpy2.rootn(gmpy2.mpfr(na), b)
        with gmpy2.context(precision=prec, round=gmpy2.RoundUp):
            hi = gmpy2.rootn(gmpy2.mpfr(na), b)
        flo = int(gmpy2.floor(lo))
        fhi = int(gmpy2.floor(hi))
        if flo == fhi:
            return FloorPower(n=n, c=c, value=flo, certified=True)
    raise FloorCertificationError(
        f"floor of {n}^({a}/{b}) not certified at {_PRECISION_LADDER[-1]} bits"
    )


def floor_powers(ns, c) -> np.ndarray:
    """Vector of certified [n^c] as int64."""
    c = _as_fraction(c)
    return np.array([floor_pow(int(n), c).value for n in ns], dtype=np.int64)


def von_mangoldt(n: int) -> float:
    """log p if n is a power of the prime p, else 0."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return 0.0
    for p in range(2, math.isqrt(n) + 1):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return math.log(p) if n == 1 else 0.0
    return math.log(n)  # n prime


def divisor_count(m: int) -> int:
    if m < 1:
        raise ValueError("m must be >= 1")
    d = 1
    for p in range(2, math.isqrt(m) + 1):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            d *= e + 1
    if m > 1:
        d *= 2
    return d


def divisor_count_pow(m: int, k: int) -> int:
    """d(m)^k (coefficient bound for the combinatorial decomposition)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return divisor_count(m) ** k


def gamma_fn(s: float) -> float:
    """Gamma(s) for s > 0 (Lanczos via math.gamma; ~1e-15 relative)."""
    if s <= 0:
        raise ValueError("gamma_fn requires s > 0")
    return math.gamma(s)


def dist_nearest_int(theta: float) -> float:
    """||theta||: distance from theta to the nearest integer, in [0, 1/2]."""
    frac = theta - math.floor(theta)
    return min(frac, 1.0 - frac)


def sigma_of_c(c, variant: str = "theorem") -> float:
    """Power-saving exponent min((48-38c)/29, (16-10c)/75).

    `conservative` divides by c, matching the per-branch usage
    sigma <= (48-38c)/29c that the minor-arc estimates consume.
    """
    cf = float(_as_fraction(c) if not isinstance(c, float) else c)
    if not 1.0 < cf < 24.0 / 19.0:
        raise ValueError(f"c={cf} outside (1, 24/19)")
    val = min((48.0 - 38.0 * cf) / 29.0, (16.0 - 10.0 * cf) / 75.0)
    if variant == "theorem":
        return val
    if variant == "conservative":
        return val / cf
    raise ValueError(f"unknown sigma variant {variant!r}")


@dataclass(frozen=True)
class ProblemParams:
    """Run parameters: exponent, ranges and derived cutoffs.

    c is exact rational so that every [p^c] below is decidable; gamma = 1/c.
    X = M^gamma is the prime cutoff (p <= X iff [p^c] <= M), omega the
    half-width of the single major arc.
    """

    c: Fraction
    bigN: int
    bigM: int
    eps: float = 0.01
    sigma_variant: str = "theorem"
    gamma: Fraction = field(init=False)
    bigX: float = field(init=False)
    omega: float = field(init=False)
    sigma: float = field(init=False)

    def __post_init__(self):
        c = _as_fraction(self.c)
        object.__setattr__(self, "c", c)
        if not Fraction(1) < c < C_UPPER:
            raise ValueError(f"c={c} outside (1, 24/19)")
        if self.eps <= 0:
            raise ValueError("eps must be > 0")
        if self.bigN < 64:
            raise ValueError("N must be >= 64 (asymptotic regime floor)")
        if not 2 <= self.bigM <= self.bigN:
            raise ValueError("need 2 <= M <= N")
        gamma = 1 / c
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "bigX", float(self.bigM) ** float(gamma))
        omega = float(self.bigN) ** (-1.0 / 3.0 - self.eps)
        if not 0.0 < omega < 0.5:
            raise ValueError("omega outside (0, 1/2)")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "sigma", sigma_of_c(c, self.sigma_variant))

    @property
    def c_float(self) -> float:
        return float(self.c)

    @property
    def gamma_float(self) -> float:
        return float(self.gamma)

    def prime_cutoff(self) -> int:
        """Largest integer p with p^c <= M, i.e. floor(M^gamma), certified."""
        return floor_pow(self.bigM, self.gamma).value

    def cutoff_H_complete(self) -> float:
        """H = X^(c-1+c*sigma) used for the complete-sum decomposition."""
        cf = self.c_float
        return self.bigX ** (cf - 1.0 + cf * self.sigma)

    def cutoff_H_prime(self) -> float:
        """H = X^(c*sigma/2) used on the prime-sum path."""
        return self.bigX ** (self.c_float * self.sigma / 2.0)

    def cutoff_Q(self) -> float:
        """Q = X^(c*sigma) for the shift-and-difference step."""
        return self.bigX ** (self.c_float * self.sigma)
