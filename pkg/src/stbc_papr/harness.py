"""Monte Carlo CCDF experiments and result serialization."""

import csv
import io
import json
import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .config import SimConfig, load_config
from .link import RECEIVE_MODEL_NOTE, propagate, receive_papr, superposition_channels, transmit_frame
from .metrics import CcdfCurve, exceedance_counts, papr_at_probability, theoretical_ccdf
from .modem import generate_bits
from .streams import NOISE, RandomStream

log = logging.getLogger(__name__)


@dataclass
class ResultSet:
    config: SimConfig
    thresholds_db: np.ndarray
    theory: np.ndarray
    tx_curves: dict
    tx_papr_db: dict
    rx_curves: dict = field(default_factory=dict)
    rx_papr_db: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    @property
    def methods(self):
        return tuple(self.tx_curves)

    def papr_at(self, prob, method, side="tx") -> float:
        samples = self.tx_papr_db if side == "tx" else self.rx_papr_db
        return papr_at_probability(samples[method], prob)

    def gain_db(self, method, prob=1e-3, side="tx") -> float:
        """PAPR reduction relative to the unmodified signal at probability ``prob``."""
        return self.papr_at(prob, "none", side) - self.papr_at(prob, method, side)


def _run_trial(cfg: SimConfig, trial: int):
    stream = RandomStream(cfg.seed, trial)
    n_bits = 2 * cfg.n_used
    bits1 = generate_bits(stream, n_bits)
    bits2 = generate_bits(stream, n_bits)
    rx_h = superposition_channels(cfg.n_rx, cfg.n_tx) if cfg.receive else None
    tx_db, rx_db = [], []
    for method in cfg.methods:
        frame = transmit_frame(bits1, bits2, method, cfg)
        tx_db.append(frame.papr().db)
        if cfg.receive:
            noise = RandomStream(cfg.seed, trial, domain=NOISE)
            rx_db.append(receive_papr(propagate(frame, rx_h, cfg.noise_power, noise)).db)
    return tx_db, rx_db


def _curve(samples, thresholds) -> CcdfCurve:
    return CcdfCurve(thresholds, exceedance_counts(samples, thresholds), len(samples))


def run_ccdf_experiment(cfg: SimConfig) -> ResultSet:
    """CCDF of the system PAPR for every configured method.

    Trials are independent and keyed by index, so the outcome does not depend
    on ``cfg.threads``.
    """
    started = time.perf_counter()
    trials = range(cfg.symbols)
    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(lambda t: _run_trial(cfg, t), trials))
    else:
        results = [_run_trial(cfg, t) for t in trials]
    elapsed = time.perf_counter() - started

    thresholds = cfg.thresholds_db
    tx = np.array([r[0] for r in results])
    tx_papr = {m: tx[:, i] for i, m in enumerate(cfg.methods)}
    rs = ResultSet(
        config=cfg,
        thresholds_db=thresholds,
        theory=theoretical_ccdf(cfg.n, cfg.n_tx, thresholds),
        tx_curves={m: _curve(v, thresholds) for m, v in tx_papr.items()},
        tx_papr_db=tx_papr,
    )
    if cfg.receive:
        rx = np.array([r[1] for r in results])
        rs.rx_papr_db = {m: rx[:, i] for i, m in enumerate(cfg.methods)}
        rs.rx_curves = {m: _curve(v, thresholds) for m, v in rs.rx_papr_db.items()}

    floor = min(1.0, 10.0 / cfg.symbols)
    rs.metadata = {
        "cr_interpretation": cfg.cr_interpretation,
        "clip_amplitude_over_rms": cfg.clip.amplitude_ratio,
        "pts_strategy": cfg.pts_strategy,
        "pts_scheme": cfg.pts_scheme,
        "papr_measured_on": "period 1, max over transmit antennas",
        "reliable_probability_floor": floor,
        "elapsed_seconds": round(elapsed, 3),
        "threads": cfg.threads,
    }
    if cfg.receive:
        rs.metadata["receive_model"] = RECEIVE_MODEL_NOTE
    emitted = [c.probs for c in list(rs.tx_curves.values()) + list(rs.rx_curves.values())]
    if any(np.any((p > 0) & (p < floor)) for p in emitted):
        log.warning(
            "CCDF values below %.3g rest on fewer than 10 exceedances out of %d symbols",
            floor, cfg.symbols,
        )
    return rs


def _fmt(value) -> str:
    return f"{float(value):.6g}"


def results_csv(rs: ResultSet) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    methods = rs.methods
    header = ["threshold_db", "ccdf_theory"] + [f"ccdf_{m}" for m in methods]
    header += [f"rx_ccdf_{m}" for m in rs.rx_curves]
    writer.writerow(header)
    for i, t in enumerate(rs.thresholds_db):
        row = [_fmt(t), _fmt(rs.theory[i])]
        row += [_fmt(rs.tx_curves[m].probs[i]) for m in methods]
        row += [_fmt(c.probs[i]) for c in rs.rx_curves.values()]
        writer.writerow(row)
    return buf.getvalue()


def results_json(rs: ResultSet) -> str:
    def curves(cs):
        return {m: {"probs": c.probs.tolist(), "counts": c.counts.tolist()} for m, c in cs.items()}

    doc = {
        "config": rs.config.to_dict(),
        "seed": rs.config.seed,
        "n_samples": rs.config.symbols,
        "thresholds_db": rs.thresholds_db.tolist(),
        "ccdf_theory": rs.theory.tolist(),
        "tx": curves(rs.tx_curves),
        "tx_papr_db": {m: v.tolist() for m, v in rs.tx_papr_db.items()},
        "metadata": rs.metadata,
    }
    if rs.rx_curves:
        doc["rx"] = curves(rs.rx_curves)
        doc["rx_papr_db"] = {m: v.tolist() for m, v in rs.rx_papr_db.items()}
    return json.dumps(doc, indent=2)


def write_results(rs: ResultSet, fmt="csv", path="-") -> None:
    """Write CSV or JSON to ``path``; ``-`` means standard output."""
    if fmt == "csv":
        text = results_csv(rs)
    elif fmt == "json":
        text = results_json(rs) + "\n"
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if str(path) == "-":
        sys.stdout.write(text)
        return
    with open(Path(path), "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def load_results_config(path) -> SimConfig:
    """Rebuild the configuration echoed in a JSON result file."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return load_config(overrides=doc["config"])
