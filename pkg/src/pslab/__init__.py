"""pslab: a computational laboratory for additive representation of integers
by floor powers of primes, n = [p1^c] + [p2^c], and for the exponential-sum
estimates behind its exceptional-set analysis."""

__version__ = "0.1.0"

from pslab._kernels import BACKEND as KERNEL_BACKEND  # noqa: F401
