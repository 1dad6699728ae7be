import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stbc_papr.errors import DegenerateChannelError, InputError
from stbc_papr.metrics import compute_papr
from stbc_papr.numerics import oversampled_synthesis
from stbc_papr.stbc import ChannelPair, alamouti_combine, alamouti_encode, conjugate_block_signal

from conftest import random_qpsk

complex_blocks = st.lists(
    st.complex_numbers(max_magnitude=100, allow_nan=False, allow_infinity=False), min_size=1, max_size=64
)


class TestEncode:
    def test_scalar_example(self):
        cw = alamouti_encode([1 + 1j], [-1 + 1j])
        assert cw[0, 1][0] == 1 + 1j
        assert cw[1, 1][0] == 1 - 1j
        assert cw[0, 0][0] == 1 + 1j and cw[1, 0][0] == -1 + 1j

    def test_zero_second_block(self):
        S1 = np.array([1 + 2j, 3 - 1j])
        cw = alamouti_encode(S1, np.zeros(2))
        np.testing.assert_array_equal(cw[0, 0], S1)
        np.testing.assert_array_equal(cw[0, 1], 0)
        np.testing.assert_array_equal(cw[1, 0], 0)
        np.testing.assert_array_equal(cw[1, 1], np.conj(S1))

    def test_length_mismatch(self):
        with pytest.raises(InputError):
            alamouti_encode(np.ones(4), np.ones(8))

    @settings(max_examples=100, deadline=None)
    @given(data=st.data())
    def test_codeword_invariants(self, data):
        S1 = np.asarray(data.draw(complex_blocks))
        S2 = np.asarray(data.draw(st.lists(st.complex_numbers(max_magnitude=100, allow_nan=False),
                                           min_size=S1.size, max_size=S1.size)))
        cw = alamouti_encode(S1, S2)
        np.testing.assert_array_equal(cw[0, 1], -np.conj(cw[1, 0]))
        np.testing.assert_array_equal(cw[1, 1], np.conj(cw[0, 0]))
        np.testing.assert_array_equal(cw[0, 0], S1)
        np.testing.assert_array_equal(cw[1, 0], S2)

    @pytest.mark.parametrize("L", [1, 4, 6])
    def test_second_period_has_same_papr(self, rng, L):
        S1, S2 = random_qpsk(rng, 64), random_qpsk(rng, 64)
        cw = alamouti_encode(S1, S2)
        p11 = compute_papr(oversampled_synthesis(cw[0, 0], L)).linear
        p22 = compute_papr(oversampled_synthesis(cw[1, 1], L)).linear
        p21 = compute_papr(oversampled_synthesis(cw[1, 0], L)).linear
        p12 = compute_papr(oversampled_synthesis(cw[0, 1], L)).linear
        assert p22 == pytest.approx(p11, rel=1e-12)
        assert p12 == pytest.approx(p21, rel=1e-12)


def test_conjugate_papr_invariance(rng):
    for _ in range(200):
        n = 2 ** rng.integers(2, 10)
        X = rng.normal(size=n) + 1j * rng.normal(size=n)
        L = int(rng.integers(1, 7))
        a = compute_papr(oversampled_synthesis(X, L)).linear
        b = compute_papr(oversampled_synthesis(np.conj(X), L)).linear
        assert abs(a - b) <= 1e-12 * a


@pytest.mark.parametrize("L", [1, 3, 6])
def test_conjugate_block_signal(rng, L):
    X = rng.normal(size=32) + 1j * rng.normal(size=32)
    np.testing.assert_allclose(
        conjugate_block_signal(oversampled_synthesis(X, L)), oversampled_synthesis(np.conj(X), L), atol=1e-13
    )


class TestCombine:
    def received(self, S1, S2, h1, h2):
        return h1 * S1 + h2 * S2, -h1 * np.conj(S2) + h2 * np.conj(S1)

    @pytest.mark.parametrize("h1,h2", [(1, 0), (0, 1)])
    def test_unit_channels(self, rng, h1, h2):
        S1, S2 = random_qpsk(rng, 16), random_qpsk(rng, 16)
        s1, s2 = alamouti_combine(*self.received(S1, S2, h1, h2), ChannelPair(h1, h2))
        np.testing.assert_allclose(s1, S1, atol=1e-15)
        np.testing.assert_allclose(s2, S2, atol=1e-15)

    def test_random_channels_gain(self, rng):
        for _ in range(500):
            h1, h2 = rng.normal(size=2) + 1j * rng.normal(size=2)
            S1 = rng.normal(size=8) + 1j * rng.normal(size=8)
            S2 = rng.normal(size=8) + 1j * rng.normal(size=8)
            gain = abs(h1) ** 2 + abs(h2) ** 2
            s1, s2 = alamouti_combine(*self.received(S1, S2, h1, h2), ChannelPair(h1, h2))
            np.testing.assert_allclose(s1, gain * S1, rtol=1e-9, atol=1e-12)
            np.testing.assert_allclose(s2, gain * S2, rtol=1e-9, atol=1e-12)
            ratio = s1 / S1
            np.testing.assert_allclose(ratio.imag, 0, atol=1e-9 * gain)

    def test_degenerate(self):
        with pytest.raises(DegenerateChannelError):
            alamouti_combine(np.ones(2), np.ones(2), ChannelPair(0, 0))
