import numpy as np
import pytest

from pslab import _kernels
from pslab._kernels import _fallback

try:
    from pslab._kernels import _core
except ImportError:
    _core = None

needs_core = pytest.mark.skipif(_core is None, reason="compiled core not built")


def sample_data(n=400, seed=0):
    rng = np.random.default_rng(seed)
    floors = np.unique(rng.integers(1, 5000, size=n)).astype(np.int64)
    weights = rng.uniform(0.1, 3.0, size=len(floors))
    return floors, weights


class TestBackendSelection:
    def test_backend_reported(self):
        assert _kernels.BACKEND in ("compiled", "pure")

    def test_exports(self):
        for name in ("pair_accumulate", "expsum_int_phase", "grid_abs_power_sum", "sinc_kernel_sum"):
            assert callable(getattr(_kernels, name))


@needs_core
class TestBackendAgreement:
    def test_pair_accumulate_exact(self):
        floors, weights = sample_data()
        c1, w1 = _core.pair_accumulate(floors, weights, 6000)
        c2, w2 = _fallback.pair_accumulate(floors, weights, 6000)
        assert np.array_equal(c1, c2)
        np.testing.assert_allclose(w1, w2, rtol=1e-9, atol=1e-12)

    def test_pair_accumulate_total(self):
        # every ordered pair with sum <= length is counted exactly once
        floors, weights = sample_data(100)
        counts, _ = _core.pair_accumulate(floors, weights, 10**6)
        assert counts.sum() == len(floors) ** 2

    def test_expsum_int_phase(self):
        floors, weights = sample_data()
        for x in (0.0, 0.123456, 0.5, 0.999, 17.25):
            a = _core.expsum_int_phase(floors, weights, x)
            b = _fallback.expsum_int_phase(floors, weights, x)
            assert abs(a - b) <= 1e-9 * max(1.0, abs(b))

    @pytest.mark.parametrize("power", [2, 4])
    def test_grid_abs_power_sum(self, power):
        floors, weights = sample_data(120)
        a = _core.grid_abs_power_sum(floors, weights, 0.01, 1e-4, 5000, power)
        b = _fallback.grid_abs_power_sum(floors, weights, 0.01, 1e-4, 5000, power)
        assert a == pytest.approx(b, rel=1e-9)

    def test_sinc_kernel_sum(self):
        rng = np.random.default_rng(1)
        wsum = np.zeros(2000)
        idx = rng.integers(0, 2000, size=300)
        wsum[idx] = rng.uniform(0, 2, size=300)
        for n in (0, 700, 1999):
            a = _core.sinc_kernel_sum(wsum, n, 0.003)
            b = _fallback.sinc_kernel_sum(wsum, n, 0.003)
            assert a == pytest.approx(b, rel=1e-9, abs=1e-12)


class TestFallbackUnits:
    def test_pair_accumulate_tiny(self):
        floors = np.array([2, 3], dtype=np.int64)
        weights = np.array([1.0, 2.0])
        counts, wsum = _fallback.pair_accumulate(floors, weights, 6)
        assert counts[4] == 1 and counts[5] == 2 and counts[6] == 1
        assert wsum[5] == pytest.approx(4.0)  # 2 * (1.0 * 2.0)

    def test_expsum_zero_x(self):
        v = _fallback.expsum_int_phase(np.array([5, 9]), np.array([1.5, 2.5]), 0.0)
        assert v == pytest.approx(4.0)

    def test_sinc_center(self):
        wsum = np.zeros(10)
        wsum[4] = 3.0
        assert _fallback.sinc_kernel_sum(wsum, 4, 0.01) == pytest.approx(0.06)
