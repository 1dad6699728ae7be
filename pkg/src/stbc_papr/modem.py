"""Bit generation, Gray-coded QPSK and placement of data symbols on subcarriers."""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, InputError
from .streams import RandomStream

_SCALE = 1.0 / np.sqrt(2.0)


def generate_bits(stream: RandomStream, count: int) -> np.ndarray:
    """Draw ``count`` uniform bits from ``stream``."""
    if count < 0:
        raise InputError(f"bit count must be non-negative, got {count}")
    return stream.integers(0, 2, size=int(count), dtype=np.uint8)


def qpsk_modulate(bits) -> np.ndarray:
    """Map bit pairs to unit-energy Gray-coded QPSK symbols.

    The first bit of a pair selects the sign of the imaginary part and the
    second bit the sign of the real part (0 -> +, 1 -> -), giving
    00 -> (1+j)/sqrt2, 01 -> (-1+j)/sqrt2, 11 -> (-1-j)/sqrt2, 10 -> (1-j)/sqrt2.
    """
    bits = np.asarray(bits)
    if bits.ndim != 1 or bits.size % 2:
        raise InputError(f"QPSK needs an even number of bits, got {bits.size}")
    if bits.size and not np.all((bits == 0) | (bits == 1)):
        raise InputError("bits must be 0 or 1")
    pairs = bits.reshape(-1, 2).astype(np.float64)
    return _SCALE * ((1.0 - 2.0 * pairs[:, 1]) + 1j * (1.0 - 2.0 * pairs[:, 0]))


def qpsk_demodulate(symbols) -> np.ndarray:
    """Hard minimum-distance decision; points on an axis decide toward bit 0."""
    symbols = np.atleast_1d(np.asarray(symbols, dtype=np.complex128))
    bits = np.empty((symbols.size, 2), dtype=np.uint8)
    bits[:, 0] = symbols.imag < 0
    bits[:, 1] = symbols.real < 0
    return bits.reshape(-1)


@dataclass(frozen=True)
class CarrierMap:
    """Occupied DFT bins of an ``n_total``-point OFDM symbol.

    ``occupied[i]`` is the bin that carries data symbol ``i``.
    """

    n_total: int
    occupied: tuple

    def __post_init__(self):
        occ = tuple(int(b) for b in self.occupied)
        object.__setattr__(self, "occupied", occ)
        if len(set(occ)) != len(occ):
            raise ConfigurationError("occupied bins must be distinct", key="occupied")
        if any(b < 0 or b >= self.n_total for b in occ):
            raise ConfigurationError(f"occupied bins must lie in [0, {self.n_total})", key="occupied")

    @classmethod
    def centered(cls, n_total, n_used):
        """Band k = -floor((n_used-1)/2) .. floor(n_used/2) around DC, in frequency order."""
        if n_used < 1 or n_used > n_total:
            raise ConfigurationError(f"must satisfy 1 <= n_used <= n ({n_total}), got {n_used}", key="n_used")
        k = np.arange(-((n_used - 1) // 2), n_used // 2 + 1)
        return cls(n_total, tuple(int(b) for b in np.mod(k, n_total)))

    @property
    def n_used(self) -> int:
        return len(self.occupied)

    @property
    def indices(self) -> np.ndarray:
        return np.asarray(self.occupied, dtype=np.int64)

    def in_band_mask(self) -> np.ndarray:
        mask = np.zeros(self.n_total, dtype=bool)
        mask[self.indices] = True
        return mask


def map_to_subcarriers(symbols, cmap: CarrierMap) -> np.ndarray:
    symbols = np.asarray(symbols, dtype=np.complex128)
    if symbols.shape != (cmap.n_used,):
        raise InputError(f"expected {cmap.n_used} symbols, got shape {symbols.shape}")
    X = np.zeros(cmap.n_total, dtype=np.complex128)
    X[cmap.indices] = symbols
    return X


def extract_from_subcarriers(X, cmap: CarrierMap) -> np.ndarray:
    X = np.asarray(X, dtype=np.complex128)
    if X.shape != (cmap.n_total,):
        raise InputError(f"expected a block of {cmap.n_total} bins, got shape {X.shape}")
    return X[cmap.indices]
