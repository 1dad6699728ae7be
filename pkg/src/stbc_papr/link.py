"""End-to-end STBC MIMO-OFDM frames: transmit, flat channel, receive.

Frame arrays are indexed ``[antenna, period, sample]``. With two transmit
antennas the two data blocks form one Alamouti codeword; with a single
antenna they are sent back to back.
"""

from dataclasses import dataclass

import numpy as np

from .config import SimConfig
from .errors import ConfigurationError, DegenerateChannelError, InputError, SideInfoError
from .metrics import PaprValue, compute_papr, mimo_papr
from .modem import extract_from_subcarriers, map_to_subcarriers, qpsk_demodulate, qpsk_modulate
from .numerics import oversampled_analysis, oversampled_synthesis_batch
from .reduction import (
    CLIP_SIDE_INFO,
    NO_SIDE_INFO,
    METHODS,
    SideInfo,
    apply_phases,
    clip_and_filter,
    pts_invert,
    pts_optimize,
    slm_invert,
    slm_select,
)
from .stbc import ChannelPair, alamouti_combine, alamouti_encode, conjugate_block_signal
from .streams import RandomStream

RECEIVE_MODEL_NOTE = (
    "receive-side PAPR assumes a flat noiseless channel with gain 1/sqrt(n_tx) on every "
    "transmit-receive path, measured on the superposed period-1 signal; the channel is an "
    "assumption, so these curves are model-dependent"
)


@dataclass(frozen=True)
class TxFrame:
    signals: np.ndarray  # (n_tx, 2, L*N)
    side: tuple  # SideInfo per data block
    bits: tuple  # (bits1, bits2)
    method: str

    @property
    def n_tx(self) -> int:
        return self.signals.shape[0]

    def antenna_papr(self, period=0) -> list:
        return [compute_papr(self.signals[a, period]) for a in range(self.n_tx)]

    def papr(self, period=0) -> PaprValue:
        """System PAPR: max over transmit antennas."""
        return mimo_papr(self.antenna_papr(period))


@dataclass(frozen=True)
class RxFrame:
    signals: np.ndarray  # (n_rx, 2, L*N)
    channels: np.ndarray  # (n_rx, n_tx) flat gains


def _reduce_block(X_used, method, cfg: SimConfig):
    """Apply a spectrum-domain technique; returns the transmitted data symbols and SI."""
    cmap = cfg.carrier_map
    if method == "slm":
        _, side, _ = slm_select(X_used, cfg.codebook, cmap, cfg.oversample)
        return X_used * cfg.codebook.sequences[side.slm_index], side
    if method == "pts":
        _, side, _ = pts_optimize(map_to_subcarriers(X_used, cmap), cfg.pts_plan, cmap, cfg.oversample)
        return apply_phases(X_used, cfg.pts_plan, cmap, side.phases), side
    return X_used, NO_SIDE_INFO


def transmit_frame(bits1, bits2, method, cfg: SimConfig) -> TxFrame:
    if method not in METHODS:
        raise ConfigurationError(f"unknown method {method!r}", key="methods")
    cmap, L = cfg.carrier_map, cfg.oversample
    expected = 2 * cmap.n_used
    if len(bits1) != expected or len(bits2) != expected:
        raise InputError(f"each bit block must hold {expected} bits")

    symbols = [qpsk_modulate(bits1), qpsk_modulate(bits2)]
    if method == "clip":
        spectra = np.stack([map_to_subcarriers(s, cmap) for s in symbols])
        period1 = [clip_and_filter(x, cfg.clip, cmap, L) for x in oversampled_synthesis_batch(spectra, L)]
        side = (CLIP_SIDE_INFO, CLIP_SIDE_INFO)
        if cfg.n_tx == 2:
            signals = np.array([
                [period1[0], -conjugate_block_signal(period1[1])],
                [period1[1], conjugate_block_signal(period1[0])],
            ])
        else:
            signals = np.array([[period1[0], period1[1]]])
    else:
        reduced = [_reduce_block(s, method, cfg) for s in symbols]
        side = tuple(r[1] for r in reduced)
        S1, S2 = (map_to_subcarriers(r[0], cmap) for r in reduced)
        if cfg.n_tx == 2:
            blocks = alamouti_encode(S1, S2).blocks
        else:
            blocks = np.array([[S1, S2]])
        n_tx = blocks.shape[0]
        signals = oversampled_synthesis_batch(blocks.reshape(-1, cmap.n_total), L).reshape(n_tx, 2, -1)
    return TxFrame(signals, side, (np.asarray(bits1), np.asarray(bits2)), method)


def _channel_matrix(channels, n_tx):
    if isinstance(channels, ChannelPair):
        channels = [channels]
    if len(channels) and isinstance(channels[0], ChannelPair):
        h = np.array([[c.h1, c.h2] for c in channels], dtype=np.complex128)
    else:
        h = np.atleast_2d(np.asarray(channels, dtype=np.complex128))
    if h.shape[1] != n_tx:
        raise InputError(f"channel matrix has {h.shape[1]} columns for {n_tx} transmit antennas")
    return h


def superposition_channels(n_rx, n_tx) -> np.ndarray:
    """Gains used for receive-side PAPR curves (see ``RECEIVE_MODEL_NOTE``)."""
    return np.full((n_rx, n_tx), 1.0 / np.sqrt(n_tx), dtype=np.complex128)


def random_channels(stream: RandomStream, n_rx, n_tx) -> np.ndarray:
    """Rayleigh flat gains, CN(0, 1) per path."""
    g = stream.normal((n_rx, n_tx, 2)) / np.sqrt(2.0)
    return g[..., 0] + 1j * g[..., 1]


def propagate(tx: TxFrame, channels, noise_power=0.0, stream: RandomStream = None) -> RxFrame:
    """r = sum_a h[rx, a] x_a + n per receive antenna and period."""
    h = _channel_matrix(channels, tx.n_tx)
    rx = np.einsum("ra,apn->rpn", h, tx.signals)
    if noise_power > 0:
        if stream is None:
            raise InputError("a random stream is required when noise_power > 0")
        g = stream.normal(rx.shape + (2,)) * np.sqrt(noise_power / 2.0)
        rx = rx + (g[..., 0] + 1j * g[..., 1])
    return RxFrame(rx, h)


def receive_papr(rx: RxFrame) -> PaprValue:
    """Max over receive antennas of the period-1 PAPR."""
    return mimo_papr(compute_papr(rx.signals[r, 0]) for r in range(rx.signals.shape[0]))


def _invert(symbols, side: SideInfo, cfg: SimConfig):
    if side.method == "slm":
        return slm_invert(symbols, cfg.codebook, side)
    if side.method == "pts":
        return pts_invert(symbols, cfg.pts_plan, cfg.carrier_map, side)
    return symbols


def recover_data(rx: RxFrame, side, cfg: SimConfig):
    """Analysis transform, Alamouti combining, rotation removal and hard QPSK decisions."""
    if len(side) != 2:
        raise SideInfoError("need side information for both data blocks")
    if side[0].method != side[1].method:
        raise SideInfoError("both data blocks must use the same method")
    h = rx.channels
    n = cfg.n
    spectra = np.array([[oversampled_analysis(rx.signals[r, p], n) for p in range(2)]
                        for r in range(rx.signals.shape[0])])
    total = float(np.sum(np.abs(h) ** 2))
    if total == 0.0:
        raise DegenerateChannelError("all channel gains are zero")

    if h.shape[1] == 2:
        est1 = np.zeros(n, dtype=np.complex128)
        est2 = np.zeros(n, dtype=np.complex128)
        for r in range(h.shape[0]):
            pair = ChannelPair(h[r, 0], h[r, 1])
            if pair.gain == 0:
                continue
            s1, s2 = alamouti_combine(spectra[r, 0], spectra[r, 1], pair)
            est1 += s1
            est2 += s2
    else:
        est1 = np.sum(np.conj(h[:, :1]) * spectra[:, 0], axis=0)
        est2 = np.sum(np.conj(h[:, :1]) * spectra[:, 1], axis=0)
    est = [e / total for e in (est1, est2)]

    bits = []
    for block, si in zip(est, side):
        symbols = _invert(extract_from_subcarriers(block, cfg.carrier_map), si, cfg)
        bits.append(qpsk_demodulate(symbols))
    return bits[0], bits[1]
