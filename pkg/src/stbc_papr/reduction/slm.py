"""Selected mapping: transmit the lowest-PAPR of U phase-rotated copies."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import ConfigurationError, InputError, SideInfoError
from ..metrics import PaprValue, papr_linear_rows
from ..modem import CarrierMap
from ..numerics import oversampled_synthesis_batch
from ..streams import CODEBOOK, RandomStream
from .sideinfo import SideInfo

DEFAULT_ALPHABET = (1, -1, 1j, -1j)


def _check_alphabet(alphabet, key):
    values = np.asarray(alphabet, dtype=np.complex128).ravel()
    if values.size == 0:
        raise ConfigurationError("phase alphabet is empty", key=key)
    if not np.allclose(np.abs(values), 1.0, rtol=0, atol=1e-12):
        raise ConfigurationError("phase factors must have unit modulus", key=key)
    if not np.any(values == 1):
        raise ConfigurationError("phase alphabet must contain 1", key=key)
    return values


@dataclass(frozen=True)
class SlmCodebook:
    """Route ``u`` multiplies data symbol ``i`` by ``sequences[u, i]``."""

    sequences: np.ndarray
    seed: Optional[int] = None

    def __post_init__(self):
        seq = np.atleast_2d(np.asarray(self.sequences, dtype=np.complex128))
        object.__setattr__(self, "sequences", seq)
        if not np.all(seq[0] == 1):
            raise ConfigurationError("route 0 must be the all-ones identity", key="slm_routes")
        if not np.allclose(np.abs(seq), 1.0, rtol=0, atol=1e-12):
            raise ConfigurationError("phase factors must have unit modulus", key="slm_routes")

    @property
    def u_count(self) -> int:
        return self.sequences.shape[0]

    @property
    def n_used(self) -> int:
        return self.sequences.shape[1]


def build_slm_codebook(n_used, u_count, alphabet=DEFAULT_ALPHABET, seed=0) -> SlmCodebook:
    if u_count < 1:
        raise ConfigurationError("need at least one route", key="slm_routes")
    values = _check_alphabet(alphabet, "slm_alphabet")
    stream = RandomStream(seed, 0, domain=CODEBOOK)
    seq = np.ones((u_count, n_used), dtype=np.complex128)
    if u_count > 1:
        seq[1:] = values[stream.integers(0, values.size, size=(u_count - 1, n_used))]
    return SlmCodebook(seq, seed)


def slm_select(X_used, codebook: SlmCodebook, cmap: CarrierMap, L):
    """Return ``(signal, side_info, papr)`` of the minimum-PAPR route.

    Ties go to the lowest route index.
    """
    X_used = np.asarray(X_used, dtype=np.complex128)
    if X_used.shape != (cmap.n_used,) or codebook.n_used != cmap.n_used:
        raise InputError(
            f"symbols {X_used.shape}, codebook width {codebook.n_used} and carrier map "
            f"({cmap.n_used} used) disagree"
        )
    spectra = np.zeros((codebook.u_count, cmap.n_total), dtype=np.complex128)
    spectra[:, cmap.indices] = codebook.sequences * X_used
    signals = oversampled_synthesis_batch(spectra, L)
    paprs = papr_linear_rows(signals)
    u = int(np.argmin(paprs))
    return signals[u], SideInfo("slm", slm_index=u), PaprValue(float(paprs[u]))


def slm_invert(Y_used, codebook: SlmCodebook, side: SideInfo) -> np.ndarray:
    if side.method != "slm":
        raise SideInfoError(f"expected SLM side information, got {side.method!r}")
    if not 0 <= side.slm_index < codebook.u_count:
        raise SideInfoError(f"route {side.slm_index} outside codebook of {codebook.u_count}")
    return np.asarray(Y_used, dtype=np.complex128) * np.conj(codebook.sequences[side.slm_index])
