"""Partial transmit sequences.

The occupied subcarriers are split into V disjoint sub-blocks; each
sub-block is synthesised once and the time signals are recombined with unit
phase factors ``b`` (``b[0]`` fixed to 1) chosen to minimise the PAPR.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigurationError, InputError, SideInfoError
from ..metrics import PaprValue, papr_linear_rows
from ..modem import CarrierMap
from ..numerics import oversampled_synthesis_batch
from .sideinfo import SideInfo
from .slm import DEFAULT_ALPHABET, _check_alphabet

SCHEMES = ("adjacent", "interleaved")
STRATEGIES = ("greedy", "exhaustive")

# exhaustive candidates evaluated per batch; bounds memory at ~L*N*16*1024 bytes
_CHUNK = 1024


@dataclass(frozen=True)
class PtsPlan:
    v_count: int = 8
    scheme: str = "adjacent"
    alphabet: tuple = DEFAULT_ALPHABET
    strategy: str = "greedy"

    def __post_init__(self):
        if self.v_count < 1:
            raise ConfigurationError("need at least one sub-block", key="pts_subblocks")
        if self.scheme not in SCHEMES:
            raise ConfigurationError(f"unknown scheme {self.scheme!r}", key="pts_scheme")
        if self.strategy not in STRATEGIES:
            raise ConfigurationError(f"unknown strategy {self.strategy!r}", key="pts_strategy")
        object.__setattr__(self, "alphabet", tuple(complex(a) for a in self.alphabet))
        _check_alphabet(self.alphabet, "pts_alphabet")

    @property
    def n_candidates(self) -> int:
        """Phase vectors evaluated per symbol by the configured strategy."""
        if self.strategy == "exhaustive":
            return len(self.alphabet) ** (self.v_count - 1)
        return (self.v_count - 1) * len(self.alphabet)


def subblock_of_symbol(plan: PtsPlan, cmap: CarrierMap) -> np.ndarray:
    """Sub-block index for each data symbol, in the carrier map's symbol order.

    Occupied bins are ranked by ascending DFT index. The adjacent scheme cuts
    that ranking into V runs of ``n_used // V`` bins, the last run taking the
    remainder; the interleaved scheme deals ranks round-robin.
    """
    n_used, v = cmap.n_used, plan.v_count
    if v > n_used:
        raise ConfigurationError(f"{v} sub-blocks exceed {n_used} used subcarriers", key="pts_subblocks")
    rank = np.empty(n_used, dtype=np.int64)
    rank[np.argsort(cmap.indices, kind="stable")] = np.arange(n_used)
    if plan.scheme == "adjacent":
        return np.minimum(rank // (n_used // v), v - 1)
    return rank % v


def partition_subblocks(X, plan: PtsPlan, cmap: CarrierMap) -> list:
    X = np.asarray(X, dtype=np.complex128)
    if X.shape != (cmap.n_total,):
        raise InputError(f"expected a block of {cmap.n_total} bins, got shape {X.shape}")
    owner = subblock_of_symbol(plan, cmap)
    blocks = []
    for v in range(plan.v_count):
        block = np.zeros_like(X)
        bins = cmap.indices[owner == v]
        block[bins] = X[bins]
        blocks.append(block)
    return blocks


def combine(partials, phases) -> np.ndarray:
    """Rows ``sum_v phases[r, v] * partials[v]``.

    The sum runs over v in a fixed order with elementwise operations, so a
    given phase vector yields bit-identical samples whatever batch it is
    evaluated in; greedy and exhaustive results are therefore comparable
    without tolerance.
    """
    phases = np.atleast_2d(phases)
    out = phases[:, :1] * partials[0]
    for v in range(1, partials.shape[0]):
        out = out + phases[:, v:v + 1] * partials[v]
    return out


def _exhaustive(partials, alphabet):
    v_count = partials.shape[0]
    best_papr, best_b = np.inf, None
    combos = itertools.product(alphabet, repeat=v_count - 1)
    while True:
        chunk = list(itertools.islice(combos, _CHUNK))
        if not chunk:
            break
        phases = np.ones((len(chunk), v_count), dtype=np.complex128)
        phases[:, 1:] = chunk
        paprs = papr_linear_rows(combine(partials, phases))
        i = int(np.argmin(paprs))
        if paprs[i] < best_papr:
            best_papr, best_b = float(paprs[i]), phases[i]
    return best_b, best_papr


def _greedy(partials, alphabet):
    v_count = partials.shape[0]
    b = np.ones(v_count, dtype=np.complex128)
    best_papr = float(papr_linear_rows(combine(partials, b))[0])
    for v in range(1, v_count):
        phases = np.tile(b, (len(alphabet), 1))
        phases[:, v] = alphabet
        paprs = papr_linear_rows(combine(partials, phases))
        i = int(np.argmin(paprs))
        b = phases[i]
        best_papr = float(paprs[i])
    return b, best_papr


def pts_optimize(X, plan: PtsPlan, cmap: CarrierMap, L):
    """Return ``(signal, side_info, papr)`` for the selected phase vector.

    Exhaustive search walks alphabet^(V-1) in lexicographic order; greedy makes
    one pass over sub-blocks 2..V, each time keeping the best factor with the
    others held. Ties resolve to the earliest candidate.
    """
    partials = oversampled_synthesis_batch(np.stack(partition_subblocks(X, plan, cmap)), L)
    alphabet = np.asarray(plan.alphabet, dtype=np.complex128)
    if plan.strategy == "exhaustive":
        b, papr = _exhaustive(partials, alphabet)
    else:
        b, papr = _greedy(partials, alphabet)
    signal = combine(partials, b)[0]
    return signal, SideInfo("pts", phases=tuple(complex(p) for p in b)), PaprValue(papr)


def pts_invert(Y_used, plan: PtsPlan, cmap: CarrierMap, side: SideInfo) -> np.ndarray:
    if side.method != "pts":
        raise SideInfoError(f"expected PTS side information, got {side.method!r}")
    if len(side.phases) != plan.v_count:
        raise SideInfoError(f"phase vector has {len(side.phases)} entries, plan has V={plan.v_count}")
    b = np.asarray(side.phases, dtype=np.complex128)
    owner = subblock_of_symbol(plan, cmap)
    return np.asarray(Y_used, dtype=np.complex128) * np.conj(b[owner])


def apply_phases(X_used, plan: PtsPlan, cmap: CarrierMap, phases) -> np.ndarray:
    """Frequency-domain view of a PTS rotation on the data symbols."""
    b = np.asarray(phases, dtype=np.complex128)
    return np.asarray(X_used, dtype=np.complex128) * b[subblock_of_symbol(plan, cmap)]
