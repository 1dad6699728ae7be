"""PAPR, MIMO aggregation, empirical CCDF estimation and closed-form references."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError, UndefinedPaprError


@dataclass(frozen=True, order=True)
class PaprValue:
    linear: float

    @property
    def db(self) -> float:
        return 10.0 * math.log10(self.linear)

    def __float__(self):
        return self.linear

    def __repr__(self):
        return f"PaprValue({self.linear:.6g}, {self.db:.4f} dB)"


def compute_papr(x) -> PaprValue:
    """Peak instantaneous power over mean power of a sampled signal."""
    power = np.abs(np.asarray(x, dtype=np.complex128)) ** 2
    mean = power.mean() if power.size else 0.0
    if mean == 0.0:
        raise UndefinedPaprError("PAPR is undefined for an all-zero signal")
    return PaprValue(float(power.max() / mean))


def papr_linear_rows(signals) -> np.ndarray:
    """Linear PAPR of each row of a 2-D array; used on candidate batches."""
    power = np.abs(signals) ** 2
    mean = power.mean(axis=-1)
    if np.any(mean == 0.0):
        raise UndefinedPaprError("PAPR is undefined for an all-zero signal")
    return power.max(axis=-1) / mean


def mimo_papr(values) -> PaprValue:
    """System PAPR: the largest per-antenna value."""
    values = list(values)
    if not values:
        raise InputError("mimo_papr needs at least one antenna")
    return max(v if isinstance(v, PaprValue) else PaprValue(float(v)) for v in values)


@dataclass(frozen=True)
class CcdfCurve:
    thresholds_db: np.ndarray
    counts: np.ndarray  # samples strictly above each threshold
    n_samples: int

    @property
    def probs(self) -> np.ndarray:
        return self.counts / self.n_samples


def make_threshold_grid(start_db, stop_db, step_db) -> np.ndarray:
    """Inclusive grid rounded to 10 decimals so repeated runs agree bitwise."""
    if step_db <= 0 or stop_db < start_db:
        raise InputError("threshold grid needs step > 0 and stop >= start")
    n = int(math.floor((stop_db - start_db) / step_db + 1e-9)) + 1
    return np.round(start_db + step_db * np.arange(n), 10)


def exceedance_counts(samples_db, thresholds_db) -> np.ndarray:
    samples = np.sort(np.asarray(samples_db, dtype=np.float64))
    thresholds = np.asarray(thresholds_db, dtype=np.float64)
    return samples.size - np.searchsorted(samples, thresholds, side="right")


def empirical_ccdf(samples_db, thresholds_db) -> CcdfCurve:
    """Fraction of samples strictly greater than each threshold."""
    samples = np.asarray(samples_db, dtype=np.float64).ravel()
    thresholds = np.asarray(thresholds_db, dtype=np.float64).ravel()
    if samples.size == 0:
        raise InputError("empirical_ccdf needs at least one sample")
    if np.any(np.diff(thresholds) < 0):
        raise InputError("thresholds must be ascending")
    return CcdfCurve(thresholds, exceedance_counts(samples, thresholds), samples.size)


def theoretical_ccdf(n, n_tx, threshold_db):
    """Pr(PAPR > threshold) = 1 - (1 - exp(-gamma))^(n_tx * n) for independent samples."""
    if n < 1 or n_tx < 1:
        raise InputError("n and n_tx must be >= 1")
    gamma = 10.0 ** (np.asarray(threshold_db, dtype=np.float64) / 10.0)
    # -expm1(m * log1p(-e)) keeps precision when exp(-gamma) is tiny
    result = -np.expm1(n_tx * n * np.log1p(-np.exp(-gamma)))
    return float(result) if result.ndim == 0 else result


def theoretical_threshold_db(n, n_tx, prob) -> float:
    """Inverse of :func:`theoretical_ccdf` in the threshold."""
    if not 0.0 < prob < 1.0:
        raise InputError("probability must lie in (0, 1)")
    tail = -np.expm1(np.log1p(-prob) / (n_tx * n))
    return 10.0 * math.log10(-math.log(tail))


def papr_at_probability(samples_db, prob) -> float:
    """Smallest sample value t with Pr_emp(PAPR > t) <= prob."""
    samples = np.sort(np.asarray(samples_db, dtype=np.float64))[::-1]
    if samples.size == 0:
        raise InputError("need at least one sample")
    k = int(math.floor(prob * samples.size + 1e-9))
    return float(samples[min(k, samples.size - 1)])


def ccdf_crossing_db(curve: CcdfCurve, prob) -> float:
    """First grid threshold at which the curve has fallen to ``prob`` or below."""
    hits = np.nonzero(curve.probs <= prob)[0]
    if hits.size == 0:
        return math.inf
    return float(curve.thresholds_db[hits[0]])
