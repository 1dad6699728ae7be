import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stbc_papr.errors import InputError, UndefinedPaprError
from stbc_papr.metrics import (
    PaprValue,
    ccdf_crossing_db,
    compute_papr,
    empirical_ccdf,
    make_threshold_grid,
    mimo_papr,
    papr_at_probability,
    theoretical_ccdf,
    theoretical_threshold_db,
)

signals = st.lists(
    st.complex_numbers(min_magnitude=0, max_magnitude=1e3, allow_nan=False, allow_infinity=False),
    min_size=1,
    max_size=128,
).filter(lambda xs: any(abs(x) > 1e-3 for x in xs))


class TestComputePapr:
    def test_constant_modulus(self):
        p = compute_papr([0.5, 0.5, 0.5, 0.5])
        assert p.linear == 1.0 and p.db == 0.0

    def test_impulse(self):
        p = compute_papr([2, 0, 0, 0])
        assert p.linear == 4.0
        assert p.db == pytest.approx(6.0206, abs=5e-5)

    def test_mixed(self):
        # powers (2, 1, 0, 1), mean 1
        p = compute_papr([1 + 1j, 1, 0, -1j])
        assert p.linear == pytest.approx(2.0, rel=1e-15)
        assert p.db == pytest.approx(3.0103, abs=5e-5)

    def test_zero_signal(self):
        with pytest.raises(UndefinedPaprError):
            compute_papr(np.zeros(8))

    @settings(max_examples=200, deadline=None)
    @given(x=signals, scale=st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False))
    def test_scale_invariance_and_bounds(self, x, scale):
        x = np.asarray(x)
        p = compute_papr(x)
        assert p.linear >= 1 - 1e-9
        assert p.linear <= x.size * (1 + 1e-12)
        assert compute_papr(scale * x).linear == pytest.approx(p.linear, rel=1e-12)
        assert p.db == pytest.approx(10 * math.log10(p.linear), abs=1e-12)

    @settings(max_examples=100, deadline=None)
    @given(x=signals, phase=st.floats(0, 2 * math.pi), seed=st.integers(0, 2**32 - 1))
    def test_permutation_and_rotation(self, x, phase, seed):
        x = np.asarray(x)
        p = compute_papr(x).linear
        perm = np.random.default_rng(seed).permutation(x.size)
        assert compute_papr(x[perm]).linear == pytest.approx(p, rel=1e-12)
        assert compute_papr(np.exp(1j * phase) * x).linear == pytest.approx(p, rel=1e-12)


class TestMimoPapr:
    def test_max(self):
        assert mimo_papr([PaprValue(4.0), PaprValue(2.5)]).linear == 4.0
        assert mimo_papr([3.0]).linear == 3.0
        assert mimo_papr([2.0, 2.0]).linear == 2.0

    def test_empty(self):
        with pytest.raises(InputError):
            mimo_papr([])


class TestEmpiricalCcdf:
    def test_examples(self):
        curve = empirical_ccdf([6, 7, 8, 9], [5.0, 7.5, 9.0, 10.0])
        np.testing.assert_array_equal(curve.probs, [1.0, 0.5, 0.0, 0.0])

    def test_strict_inequality(self):
        curve = empirical_ccdf([7.0, 7.0, 8.0], [7.0])
        assert curve.probs[0] == pytest.approx(1 / 3)

    def test_empty(self):
        with pytest.raises(InputError):
            empirical_ccdf([], [1.0])

    @settings(max_examples=100, deadline=None)
    @given(samples=st.lists(st.floats(-50, 50), min_size=1, max_size=200),
           thresholds=st.lists(st.floats(-60, 60), min_size=1, max_size=50))
    def test_monotone_and_bounded(self, samples, thresholds):
        curve = empirical_ccdf(samples, sorted(thresholds))
        assert np.all((curve.probs >= 0) & (curve.probs <= 1))
        assert np.all(np.diff(curve.probs) <= 0)
        brute = [sum(s > t for s in samples) for t in sorted(thresholds)]
        np.testing.assert_array_equal(curve.counts, brute)


class TestTheoreticalCcdf:
    def test_single_sample(self):
        assert theoretical_ccdf(1, 1, 0.0) == pytest.approx(math.exp(-1), rel=1e-12)

    def test_two_antennas(self):
        # exp(-gamma) = 0.5  ->  1 - 0.5**2
        assert theoretical_ccdf(1, 2, 10 * math.log10(math.log(2))) == pytest.approx(0.75, rel=1e-12)

    def test_n512_8db(self):
        # 1 - (1 - exp(-10**0.8))**512 evaluated directly
        assert theoretical_ccdf(512, 1, 8.0) == pytest.approx(0.606265, abs=1e-6)

    def test_monotone(self):
        grid = make_threshold_grid(0, 15, 0.1)
        p = theoretical_ccdf(512, 2, grid)
        assert np.all(np.diff(p) <= 0)
        assert np.all(theoretical_ccdf(1024, 2, grid) >= p)
        assert np.all(theoretical_ccdf(512, 1, grid) <= p)

    @pytest.mark.parametrize("n,mt,prob", [(512, 1, 0.1), (512, 2, 1e-3), (64, 1, 0.5)])
    def test_inverse(self, n, mt, prob):
        assert theoretical_ccdf(n, mt, theoretical_threshold_db(n, mt, prob)) == pytest.approx(prob, rel=1e-9)


def test_threshold_grid():
    grid = make_threshold_grid(4, 13, 0.1)
    assert grid.size == 91
    assert grid[0] == 4.0 and grid[-1] == 13.0 and grid[37] == 7.7


def test_papr_at_probability():
    samples = np.arange(1000, dtype=float)
    t = papr_at_probability(samples, 1e-3)
    assert t == 998.0
    assert np.sum(samples > t) <= 1
    assert papr_at_probability(samples, 0.1) == 899.0


def test_crossing():
    curve = empirical_ccdf([6, 7, 8, 9], [5.0, 7.5, 9.0])
    assert ccdf_crossing_db(curve, 0.5) == 7.5
    assert ccdf_crossing_db(curve, 0.0) == 9.0
