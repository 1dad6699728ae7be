"""Clipping and out-of-band filtering, optionally repeated (RCF)."""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigurationError, InputError, UndefinedPaprError
from ..modem import CarrierMap
from ..numerics import padded_positions


@dataclass(frozen=True)
class ClipConfig:
    """Clipping level ``A = rms * 10**(cr_db / 20)`` and number of clip/filter passes."""

    cr_db: float = 4.0
    iterations: int = 1

    def __post_init__(self):
        if self.iterations < 0 or int(self.iterations) != self.iterations:
            raise ConfigurationError("must be a non-negative integer", key="rcf_iterations")
        if not math.isfinite(self.cr_db):
            raise ConfigurationError("must be finite", key="cr_db")

    @classmethod
    def from_linear(cls, ratio, iterations=1):
        if ratio <= 0:
            raise ConfigurationError("linear clipping ratio must be positive", key="cr_linear")
        return cls(20.0 * math.log10(ratio), iterations)

    @property
    def amplitude_ratio(self) -> float:
        return 10.0 ** (self.cr_db / 20.0)


def rms(x) -> float:
    x = np.asarray(x, dtype=np.complex128)
    value = float(np.sqrt(np.mean(np.abs(x) ** 2))) if x.size else 0.0
    if value == 0.0:
        raise UndefinedPaprError("RMS of an all-zero signal is undefined for clipping")
    return value


def clip_signal(x, cr_db) -> np.ndarray:
    """Limit magnitudes to ``A = rms(x) * 10**(cr_db/20)``, keeping phase."""
    x = np.asarray(x, dtype=np.complex128)
    level = rms(x) * 10.0 ** (cr_db / 20.0)
    mag = np.abs(x)
    over = mag > level
    out = x.copy()
    out[over] = x[over] * (level / mag[over])
    return out


def out_of_band_mask(cmap: CarrierMap, L) -> np.ndarray:
    """True on bins of the ``L*N`` spectrum that carry no subcarrier."""
    mask = np.ones(L * cmap.n_total, dtype=bool)
    mask[padded_positions(cmap.indices, cmap.n_total, L)] = False
    return mask


def filter_out_of_band(x, cmap: CarrierMap, L) -> np.ndarray:
    """Zero every bin outside the occupied band; in-band bins pass unchanged."""
    x = np.asarray(x, dtype=np.complex128)
    if x.shape != (L * cmap.n_total,):
        raise InputError(f"expected {L * cmap.n_total} samples, got shape {x.shape}")
    spectrum = np.fft.fft(x, norm="ortho")
    spectrum[out_of_band_mask(cmap, L)] = 0.0
    return np.fft.ifft(spectrum, norm="ortho")


def clip_and_filter(x, cfg: ClipConfig, cmap: CarrierMap, L) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128)
    if x.shape != (L * cmap.n_total,):
        raise InputError(f"expected {L * cmap.n_total} samples, got shape {x.shape}")
    for _ in range(cfg.iterations):
        x = filter_out_of_band(clip_signal(x, cfg.cr_db), cmap, L)
    return x
