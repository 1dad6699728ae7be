"""Unitary DFT pair and frequency-domain zero-padded oversampling.

All transform conventions of the package live here:

* ``inverse_transform``  x(n) = 1/sqrt(N) * sum_k X_k exp(+j 2 pi k n / N)
* ``forward_transform``  X_k = 1/sqrt(N) * sum_n x(n) exp(-j 2 pi k n / N)
* ``oversampled_synthesis`` evaluates the same sum on the fine grid
  n / (L N), n = 0 .. LN-1, by inserting (L-1) N zeros in the middle of the
  spectrum. Bins 0 .. N/2-1 are positive frequencies, bins N/2 .. N-1 are
  negative frequencies and move to the tail of the padded spectrum.

N must be a power of two; the oversampled length L*N need not be (L = 6 is
the default), and the length-LN transforms are evaluated exactly by numpy's
mixed-radix FFT.

The oversampled output is scaled so that sample n*L equals the L = 1 output
at sample n; mean power is therefore independent of L.
"""

import numpy as np

from .errors import ConfigurationError, InputError

__all__ = [
    "is_power_of_two",
    "inverse_transform",
    "forward_transform",
    "oversampled_synthesis",
    "oversampled_analysis",
    "padded_positions",
    "zero_pad_spectrum",
    "oversampled_synthesis_batch",
]


def is_power_of_two(n) -> bool:
    n = int(n)
    return n > 0 and (n & (n - 1)) == 0


def _as_block(x, name="input", radix2=True) -> np.ndarray:
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim != 1:
        raise InputError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if radix2 and not is_power_of_two(arr.size):
        raise ConfigurationError(f"length {arr.size} is not a power of two", key=name)
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name} contains non-finite values")
    return arr


def _check_oversampling(L) -> int:
    if int(L) != L or L < 1:
        raise ConfigurationError(f"oversampling factor must be an integer >= 1, got {L}", key="oversample")
    return int(L)


def inverse_transform(X) -> np.ndarray:
    """Unitary inverse DFT of a length-N spectrum (N a power of two)."""
    X = _as_block(X, "spectrum")
    return np.fft.ifft(X, norm="ortho")


def forward_transform(x) -> np.ndarray:
    """Unitary forward DFT; exact inverse of :func:`inverse_transform`."""
    x = _as_block(x, "signal")
    return np.fft.fft(x, norm="ortho")


def padded_positions(bins, n, L) -> np.ndarray:
    """Map DFT bin indices of a length-``n`` spectrum to the length ``L*n`` layout."""
    bins = np.asarray(bins, dtype=np.int64)
    half = n // 2
    return np.where(bins < half, bins, bins + (L - 1) * n)


def zero_pad_spectrum(X, L) -> np.ndarray:
    """Insert ``(L-1)*N`` zeros between bin N/2-1 and bin N/2."""
    X = _as_block(X, "spectrum")
    L = _check_oversampling(L)
    if L == 1:
        return X.copy()
    n = X.size
    half = n // 2
    padded = np.zeros(L * n, dtype=np.complex128)
    padded[:half] = X[:half]
    padded[L * n - (n - half):] = X[half:]
    return padded


def oversampled_synthesis(X, L) -> np.ndarray:
    """Time signal of ``L*N`` samples interpolating the ``L = 1`` synthesis of ``X``."""
    L = _check_oversampling(L)
    padded = zero_pad_spectrum(X, L)
    return np.fft.ifft(padded, norm="ortho") * np.sqrt(L)


def oversampled_analysis(x, n) -> np.ndarray:
    """Recover the length-``n`` spectrum from an oversampled time signal.

    Inverse of :func:`oversampled_synthesis` for band-limited input; any
    energy in the padding region is discarded.
    """
    x = _as_block(x, "signal", radix2=False)
    if not is_power_of_two(n) or x.size % n:
        raise InputError(f"signal length {x.size} is not a multiple of n={n}")
    L = x.size // n
    spectrum = np.fft.fft(x, norm="ortho") / np.sqrt(L)
    half = n // 2
    return np.concatenate([spectrum[:half], spectrum[x.size - (n - half):]])


def oversampled_synthesis_batch(Xs, L) -> np.ndarray:
    """Row-wise :func:`oversampled_synthesis` of a ``(rows, N)`` array."""
    Xs = np.asarray(Xs, dtype=np.complex128)
    L = _check_oversampling(L)
    if Xs.ndim != 2 or not is_power_of_two(Xs.shape[1]):
        raise ConfigurationError(f"expected (rows, N) with N a power of two, got {Xs.shape}", key="spectrum")
    rows, n = Xs.shape
    half = n // 2
    padded = np.zeros((rows, L * n), dtype=np.complex128)
    padded[:, :half] = Xs[:, :half]
    padded[:, L * n - (n - half):] = Xs[:, half:]
    return np.fft.ifft(padded, axis=1, norm="ortho") * np.sqrt(L)
