"""Acceptance gate.

One test per criterion; each prints a single PASS/FAIL line with the measured
quantity next to its pinned tolerance.  Tolerances here are contractual: do
not loosen them to make a run green.
"""

import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from pslab.arith import ProblemParams, floor_pow, sigma_of_c
from pslab.circle import (
    bessel_link,
    full_period_rep_identity,
    main_term,
    major_arc_integral_exact,
    parseval_closed_form,
)
from pslab.exceptional import exceptional_set
from pslab.expsum import tsum_data

C = Fraction(11, 10)


def report(num, name, ok, detail):
    print(f"[criterion {num:2d}] {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {num} failed: {detail}"


def test_criterion_1_exact_representation_identity():
    p = ProblemParams(c=C, bigN=10**4, bigM=10**4)
    rng = np.random.default_rng(12345)
    ns = rng.integers(10**4 // 2 + 1, 10**4 + 1, size=100)
    worst = 0.0
    for n in ns:
        integ, direct = full_period_rep_identity(p, int(n))
        scale = max(abs(direct), 1e-300)
        worst = max(worst, abs(integ - direct) / scale)
    report(1, "full-period integral = R_w(n)", worst <= 1e-9, f"max rel err {worst:.3e} <= 1e-9")


def test_criterion_2_parseval_anchor():
    worst = 0.0
    for M in (100, 1000, 10**4):
        p = ProblemParams(c=C, bigN=max(M, 64), bigM=M)
        _, weights, _ = tsum_data(p.c, p.bigM)
        want = float(np.sum(weights**2))
        got = parseval_closed_form(p)
        worst = max(worst, abs(got - want) / want)
    report(2, "Parseval closed form = sum (log p)^2", worst <= 1e-9, f"max rel err {worst:.3e} <= 1e-9")


def test_criterion_3_heath_brown_exactness():
    import pslab.hb as hb

    dec10 = hb.decompose(10)
    g = np.zeros(11, dtype=np.complex128)
    g[1:] = 1.0
    psi10 = dec10.evaluate(g).real
    ok_psi = abs(psi10 - 7.8320) < 5e-4

    rng = np.random.default_rng(777)
    worst = 0.0
    for X in (10**2, 10**3, 10**4):
        dec = hb.decompose(X)
        lam = hb.lambda_array(X)
        scale = float(np.sum(lam))
        for _ in range(100):
            garr = np.zeros(X + 1, dtype=np.complex128)
            garr[1:] = rng.uniform(-1, 1, X) + 1j * rng.uniform(-1, 1, X)
            want = complex(np.sum(lam * garr.real), np.sum(lam * garr.imag))
            got = dec.evaluate(garr)
            worst = max(worst, abs(got - want) / scale)
    ok = ok_psi and worst <= 1e-9
    report(3, "Heath-Brown recombination", ok, f"psi(10)={psi10:.4f}, max rel residual {worst:.3e} <= 1e-9")


def test_criterion_4_b_process_corpus():
    from pslab.vdc import b_process_conjugate, power_phase

    worst = 0.0
    for X in (10**3, 10**4):
        for k in range(6):
            phase = power_phase(2.0**-k, float(C), float(X))
            out = b_process_conjugate(phase, X // 2, X)
            worst = max(worst, out.c_fitted)
    report(4, "B-process fitted constant", worst <= 10.0, f"max fitted C {worst:.3f} <= 10")


def test_criterion_5_major_arc_trend():
    devs = []
    ratio_1e5 = None
    for M in (10**4, 10**5, 10**6):
        p = ProblemParams(c=C, bigN=M, bigM=M)
        n = 3 * M // 4
        ratio = major_arc_integral_exact(p, n) / main_term(n, p.gamma_float)
        if M == 10**5:
            ratio_1e5 = ratio
        devs.append(abs(ratio - 1.0))
    ok = 0.5 <= ratio_1e5 <= 2.0 and devs[0] >= devs[1] >= devs[2]
    report(5, "major-arc ratio trend", ok, f"ratio(1e5)={ratio_1e5:.4f} in [0.5,2], |ratio-1| seq {['%.4f' % d for d in devs]} non-increasing")


def test_criterion_6_bessel_chain():
    p = ProblemParams(c=C, bigN=10**4, bigM=10**4)
    rng = np.random.default_rng(99)
    ns = rng.integers(10**4 // 2 + 1, 10**4 + 1, size=50)
    rep = bessel_link(p, ns)
    ok = rep.sum_sq_minor_integrals <= rep.fourth_moment * 1.05
    report(6, "Bessel inequality on minor arc", ok, f"sum|I_m|^2 = {rep.sum_sq_minor_integrals:.4e} <= 1.05 * {rep.fourth_moment:.4e}")


def test_criterion_7_exceptional_ground_truth():
    rep20 = exceptional_set(C, 20, 4)
    ok_list = rep20.exceptional == [9, 12, 14, 17, 20]
    densities = [exceptional_set(C, N, 4).density for N in (10**3, 10**4, 10**5)]
    ok_mono = all(densities[i + 1] <= densities[i] for i in range(2))
    report(7, "exceptional set ground truth", ok_list and ok_mono, f"E(20)={rep20.exceptional}, densities {['%.2e' % d for d in densities]} non-increasing")


def test_criterion_8_floor_certification():
    # exact integer oracle: m = [n^(a/b)] iff m^b <= n^a < (m+1)^b
    worst_n = None
    for c in (Fraction(11, 10), Fraction(6, 5)):
        a, b = c.numerator, c.denominator
        for n in range(1, 10**5 + 1):
            fp = floor_pow(n, c)
            if not fp.certified:
                worst_n = (n, c, "uncertified")
                break
            na = n**a
            m = fp.value
            if not (m**b <= na < (m + 1) ** b):
                worst_n = (n, c, "oracle mismatch")
                break
        if worst_n:
            break
    report(8, "floor-power certification", worst_n is None, "all n <= 1e5 certified and exact-arithmetic verified for c in {11/10, 6/5}" if worst_n is None else str(worst_n))


def test_criterion_9_sigma_evaluator():
    c = Fraction(3136, 2560)
    b1 = (48 - 38 * float(c)) / 29
    b2 = (16 - 10 * float(c)) / 75
    val = sigma_of_c(c)
    ok_cross = abs(b1 - 0.05) <= 1e-12 and abs(b2 - 0.05) <= 1e-12 and abs(val - 0.05) <= 1e-12
    ok_end = (48 - 38 * (24 / 19)) / 29 == pytest.approx(0.0, abs=1e-12)
    report(9, "sigma(c) branch crossing", ok_cross and ok_end, f"sigma(3136/2560)={val:.14f} within 1e-12 of 0.05; endpoint branch -> 0")


def test_criterion_10_cli_determinism():
    def run(threads):
        return subprocess.run(
            [sys.executable, "-m", "pslab.cli", "majorarc", "--N", "2000", "--seed", "7", "--threads", str(threads)],
            capture_output=True,
            text=True,
        )

    outs = {t: run(t) for t in (1, 4, 8)}
    ok = all(r.returncode == 0 for r in outs.values()) and len({r.stdout for r in outs.values()}) == 1
    report(10, "CLI determinism across threads", ok, "byte-identical stdout for threads {1,4,8}")
