"""Alamouti 2x2 space-time block code applied to whole OFDM frequency blocks.

Codeword layout (rows are transmit antennas, columns symbol periods)::

    antenna 1:  S1   -S2*
    antenna 2:  S2    S1*
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateChannelError, InputError


@dataclass(frozen=True)
class AlamoutiCodeword:
    blocks: np.ndarray  # shape (2 antennas, 2 periods, N)

    def __getitem__(self, index):
        antenna, period = index
        return self.blocks[antenna, period]

    @property
    def n(self) -> int:
        return self.blocks.shape[-1]


@dataclass(frozen=True)
class ChannelPair:
    """Flat gains from transmit antennas 1 and 2 to one receive antenna."""

    h1: complex
    h2: complex

    @property
    def gain(self) -> float:
        return abs(self.h1) ** 2 + abs(self.h2) ** 2


def alamouti_encode(S1, S2) -> AlamoutiCodeword:
    S1 = np.asarray(S1, dtype=np.complex128)
    S2 = np.asarray(S2, dtype=np.complex128)
    if S1.shape != S2.shape or S1.ndim != 1:
        raise InputError(f"blocks must be 1-D and equal length, got {S1.shape} and {S2.shape}")
    blocks = np.empty((2, 2, S1.size), dtype=np.complex128)
    blocks[0, 0] = S1
    blocks[1, 0] = S2
    blocks[0, 1] = -np.conj(S2)
    blocks[1, 1] = np.conj(S1)
    return AlamoutiCodeword(blocks)


def alamouti_combine(r_t1, r_t2, ch: ChannelPair):
    """Linear Alamouti combiner for one receive antenna.

    Returns the unnormalised estimates ``(h1* r1 + h2 r2*, h2* r1 - h1 r2*)``,
    which equal ``(|h1|^2 + |h2|^2) * (S1, S2)`` for noiseless input.
    """
    if ch.gain == 0:
        raise DegenerateChannelError("channel pair has zero total gain")
    r_t1 = np.asarray(r_t1, dtype=np.complex128)
    r_t2 = np.asarray(r_t2, dtype=np.complex128)
    if r_t1.shape != r_t2.shape:
        raise InputError("received blocks of both periods must have the same length")
    h1, h2 = complex(ch.h1), complex(ch.h2)
    s1 = np.conj(h1) * r_t1 + h2 * np.conj(r_t2)
    s2 = np.conj(h2) * r_t1 - h1 * np.conj(r_t2)
    return s1, s2


def conjugate_block_signal(x) -> np.ndarray:
    """Time signal whose spectrum is the conjugate of the spectrum of ``x``.

    For any DFT length, the synthesis of conj(X) is conj(x(-n mod M)); this
    lets a period-2 signal be derived from a processed period-1 signal
    without returning to the frequency domain.
    """
    x = np.asarray(x, dtype=np.complex128)
    return np.conj(np.roll(x[::-1], 1))
