import math
from fractions import Fraction

import numpy as np
import pytest

from pslab.arith import ProblemParams
from pslab.circle import (
    ArcDecomposition,
    GridTooCoarseError,
    bessel_link,
    full_period_rep_identity,
    lemma5_check,
    main_term,
    major_arc_integral_exact,
    minor_arc_moment,
    pair_spectrum,
    parseval_closed_form,
)
from pslab.expsum import CoefficientSeq, tsum_data

C = Fraction(11, 10)


def params_for(M, c=C, eps=0.01):
    return ProblemParams(c=c, bigN=max(M, 64), bigM=M, eps=eps)


class TestArcDecomposition:
    def test_lengths(self):
        arc = ArcDecomposition(omega=0.04)
        assert arc.major == (-0.04, 0.04)
        assert arc.minor == (0.04, 0.96)
        major_len = arc.major[1] - arc.major[0]
        minor_len = arc.minor[1] - arc.minor[0]
        assert major_len + minor_len == pytest.approx(1.0)


class TestMajorArcIntegral:
    def test_empty_prime_range(self):
        p = params_for(2)
        assert major_arc_integral_exact(p, 2) == 0.0

    def test_kernel_decay_far_n(self):
        p = params_for(100)
        _, weights, floors = tsum_data(p.c, p.bigM)
        far_n = int(2 * floors[-1] + 1000)
        val = abs(major_arc_integral_exact(p, far_n))
        w_total = float(np.sum(weights))
        assert val <= w_total**2 / (math.pi * 1000)

    def test_matches_adaptive_quadrature(self):
        from scipy.integrate import quad

        p = params_for(1000)
        _, weights, floors = tsum_data(p.c, p.bigM)
        n = 750

        def integrand_re(x):
            t = np.sum(weights * np.exp(2j * np.pi * x * floors))
            return (t * t * np.exp(-2j * np.pi * x * n)).real

        want, err = quad(integrand_re, -p.omega, p.omega, limit=2000, epsabs=1e-10)
        got = major_arc_integral_exact(p, n)
        assert got == pytest.approx(want, rel=1e-6)

    def test_agrees_with_main_term_at_scale(self):
        p = params_for(10**4)
        n = 3 * 10**4 // 4
        ratio = major_arc_integral_exact(p, n) / main_term(n, p.gamma_float)
        assert 0.5 <= ratio <= 2.0


class TestMainTerm:
    def test_gamma_one(self):
        assert main_term(100, 1.0) == pytest.approx(100.0, rel=1e-12)

    def test_gamma_half(self):
        assert main_term(1234, 0.5) == pytest.approx(math.pi / 4, rel=1e-12)

    def test_gamma_10_11(self):
        from pslab.arith import gamma_fn

        g = 10 / 11
        want = gamma_fn(1 + g) ** 2 / gamma_fn(2 * g) * 1000 ** (2 * g - 1)
        assert main_term(1000, g) == pytest.approx(want, rel=1e-12)

    def test_domain(self):
        with pytest.raises(ValueError):
            main_term(0, 0.9)


class TestFullPeriodIdentity:
    def test_single_diagonal_pair(self):
        p = params_for(64)
        integ, direct = full_period_rep_identity(p, 4)
        assert integ == pytest.approx(math.log(2) ** 2, rel=1e-12)
        assert direct == integ

    def test_ordered_pair(self):
        p = params_for(64)
        integ, direct = full_period_rep_identity(p, 5)
        assert integ == pytest.approx(2 * math.log(2) * math.log(3), rel=1e-12)
        assert direct == integ

    def test_no_representation(self):
        p = params_for(64)
        integ, direct = full_period_rep_identity(p, 9)
        assert integ == 0.0 and direct == 0.0


class TestParseval:
    def test_closed_form_equals_weight_squares(self):
        for M in (100, 1000, 10**4):
            p = params_for(M)
            _, weights, _ = tsum_data(p.c, p.bigM)
            assert parseval_closed_form(p) == pytest.approx(
                float(np.sum(weights**2)), rel=1e-12
            )

    def test_quadrature_matches_closed_form(self):
        p = params_for(1000)
        rep = minor_arc_moment(p, power=2, lo=0.0, hi=1.0)
        assert rep.value == pytest.approx(parseval_closed_form(p), rel=1e-4)


class TestMinorArcMoment:
    def test_empty_T(self):
        p = params_for(2)
        assert minor_arc_moment(p, power=4).value == 0.0

    def test_grid_too_coarse(self):
        p = params_for(1000)
        with pytest.raises(GridTooCoarseError):
            minor_arc_moment(p, power=4, step=0.05)

    def test_power_validation(self):
        with pytest.raises(ValueError):
            minor_arc_moment(params_for(100), power=3)

    def test_exactness_chain(self):
        # major (closed form) + minor (quadrature) = full period (orthogonality)
        p = params_for(1000)
        _, weights, floors = tsum_data(p.c, p.bigM)
        _, wsum = pair_spectrum(p.c, p.bigM)
        n = 800
        full = float(wsum[n])
        major = major_arc_integral_exact(p, n)
        # quadrature of T^2 e(-xn) over the complementary arc
        step = min(p.omega / 8.0, 1.0 / (16.0 * (2 * int(floors[-1]) + p.bigM)))
        nn = int(math.ceil((1.0 - 2 * p.omega) / step))
        h = (1.0 - 2 * p.omega) / nn
        xs = p.omega + (np.arange(nn) + 0.5) * h
        tvals = np.exp(2j * np.pi * np.outer(xs, floors)) @ weights
        minor = float(np.sum((tvals * tvals * np.exp(-2j * np.pi * xs * n)).real) * h)
        assert major + minor == pytest.approx(full, rel=1e-4, abs=1e-4 * max(1.0, abs(full)))

    def test_fourth_moment_vs_target_shape(self):
        p = params_for(1000)
        rep = minor_arc_moment(p, power=4)
        cf = p.c_float
        target = p.bigX ** (4.0 - cf - cf * p.sigma + p.eps)
        assert rep.value > 0
        assert rep.value / target < 100  # ratio recorded, not asserted tightly


class TestLemma5:
    def test_zero_coefficients(self):
        seq = CoefficientSeq(1, 50, np.zeros(50))
        rep = lemma5_check(seq, C, 0.25)
        assert rep.lhs == 0.0

    def test_dirichlet_kernel_closed_form(self):
        # c = 1, a_n = 1: V(y) = sum_{n<=X} e(ny), |V|^2 has the exact
        # primitive X + 2 sum_{k<X} (X-k) cos(2 pi k y) integrated termwise
        X, B = 40, 0.25
        seq = CoefficientSeq(1, X, "one")
        rep = lemma5_check(seq, Fraction(1), B)
        ks = np.arange(1, X)
        closed = X * B + math.fsum(
            (X - k) * (math.sin(4 * math.pi * k * B) - math.sin(2 * math.pi * k * B)) / (math.pi * k)
            for k in ks
        )
        assert rep.lhs == pytest.approx(closed, rel=1e-3)

    def test_sweep_ratio_bounded(self):
        X = 1000
        seq = CoefficientSeq(1, X, "one")
        worst = 0.0
        for k in (1, 2, 3, 4):
            rep = lemma5_check(seq, C, 2.0**-k / 2)
            worst = max(worst, rep.ratio)
        assert worst < 10.0

    def test_clipping(self):
        seq = CoefficientSeq(1, 50, "one")
        rep = lemma5_check(seq, C, 0.75)
        assert rep.clipped and rep.B_hi == 1.0

    def test_domain(self):
        with pytest.raises(ValueError):
            lemma5_check(CoefficientSeq(1, 10, "one"), C, 1.5)


class TestBessel:
    def test_empty_sample(self):
        p = params_for(1000)
        rep = bessel_link(p, [])
        assert rep.sum_sq_minor_integrals == 0.0
        assert rep.ok

    def test_single_n(self):
        p = params_for(1000)
        rep = bessel_link(p, [800])
        assert rep.ok

    def test_random_sample(self):
        p = params_for(1000)
        rng = np.random.default_rng(9)
        ns = rng.integers(501, 1001, size=20)
        rep = bessel_link(p, ns)
        assert rep.ok
        assert rep.sum_sq_minor_integrals <= rep.fourth_moment * 1.05
