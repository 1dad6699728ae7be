"""Command-line entry point: ``stbc-papr {ccdf,theory,roundtrip,selftest}``."""

import argparse
import logging
import sys

import numpy as np

from .config import load_config
from .errors import ConfigurationError, StbcPaprError
from .harness import run_ccdf_experiment, write_results
from .link import propagate, random_channels, recover_data, transmit_frame
from .metrics import make_threshold_grid, theoretical_ccdf
from .modem import generate_bits
from .selftest import run_checks
from .streams import CHANNEL, RandomStream

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2

log = logging.getLogger("stbc_papr")


def _add_config_flags(p):
    S = argparse.SUPPRESS
    p.add_argument("--config", dest="config_file", default=None, help="key=value configuration file")
    p.add_argument("--n", type=int, default=S, help="FFT size N (power of two)")
    p.add_argument("--n-used", dest="n_used", type=int, default=S, help="occupied subcarriers")
    p.add_argument("--oversample", "-L", dest="oversample", type=int, default=S)
    p.add_argument("--n-tx", dest="n_tx", type=int, default=S)
    p.add_argument("--n-rx", dest="n_rx", type=int, default=S)
    p.add_argument("--methods", default=S, help="comma list from none,clip,slm,pts")
    p.add_argument("--slm-routes", dest="slm_routes", type=int, default=S)
    p.add_argument("--pts-subblocks", dest="pts_subblocks", type=int, default=S)
    p.add_argument("--pts-scheme", dest="pts_scheme", choices=["adjacent", "interleaved"], default=S)
    p.add_argument("--pts-strategy", dest="pts_strategy", choices=["greedy", "exhaustive"], default=S)
    p.add_argument("--allow-exhaustive", dest="allow_exhaustive", action="store_true", default=S,
                   help="permit exhaustive PTS searches with more than 4096 candidates")
    cr = p.add_mutually_exclusive_group()
    cr.add_argument("--cr-db", dest="cr_db", type=float, default=S, help="clipping ratio in dB (default 4)")
    cr.add_argument("--cr-linear", dest="cr_linear", type=float, default=S, help="clipping ratio as amplitude ratio")
    p.add_argument("--rcf-iterations", dest="rcf_iterations", type=int, default=S)
    p.add_argument("--symbols", type=int, default=S, help="Monte Carlo OFDM symbols")
    p.add_argument("--seed", type=int, default=S)
    p.add_argument("--threshold-start", dest="threshold_start", type=float, default=S)
    p.add_argument("--threshold-stop", dest="threshold_stop", type=float, default=S)
    p.add_argument("--threshold-step", dest="threshold_step", type=float, default=S)
    p.add_argument("--receive", action="store_true", default=S, help="also emit receive-side curves")
    p.add_argument("--noise-power", dest="noise_power", type=float, default=S)
    p.add_argument("--threads", type=int, default=S)


_NOT_CONFIG = {"command", "config_file", "format", "out", "frames", "func", "verbose"}


def _config_from_args(args):
    overrides = {k: v for k, v in vars(args).items() if k not in _NOT_CONFIG}
    return load_config(args.config_file, overrides)


def cmd_ccdf(args):
    cfg = _config_from_args(args)
    rs = run_ccdf_experiment(cfg)
    write_results(rs, args.format, args.out)
    if "none" in rs.methods:
        for m in rs.methods:
            print(f"{m:>5}: PAPR at 1e-3 = {rs.papr_at(1e-3, m):7.3f} dB  gain {rs.gain_db(m):6.3f} dB",
                  file=sys.stderr)
    print(f"clipping ratio interpreted as {cfg.cr_interpretation} "
          f"(A/rms = {cfg.clip.amplitude_ratio:.4f})", file=sys.stderr)
    if cfg.receive:
        print(f"note: {rs.metadata['receive_model']}", file=sys.stderr)
    return EXIT_OK


def cmd_theory(args):
    grid = make_threshold_grid(args.threshold_start, args.threshold_stop, args.threshold_step)
    probs = theoretical_ccdf(args.n, args.n_tx, grid)
    out = sys.stdout if args.out == "-" else open(args.out, "w", encoding="utf-8")
    try:
        out.write("threshold_db,ccdf_theory\n")
        for t, p in zip(grid, probs):
            out.write(f"{t:.6g},{p:.6g}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_roundtrip(args):
    cfg = _config_from_args(args)
    failures = 0
    for frame in range(args.frames):
        stream = RandomStream(cfg.seed, frame)
        bits1 = generate_bits(stream, 2 * cfg.n_used)
        bits2 = generate_bits(stream, 2 * cfg.n_used)
        h = random_channels(RandomStream(cfg.seed, frame, CHANNEL), cfg.n_rx, cfg.n_tx)
        for method in ("none", "slm", "pts"):
            tx = transmit_frame(bits1, bits2, method, cfg)
            r1, r2 = recover_data(propagate(tx, h), tx.side, cfg)
            if not (np.array_equal(r1, bits1) and np.array_equal(r2, bits2)):
                failures += 1
                log.error("frame %d method %s: bit mismatch", frame, method)
    print(f"roundtrip: {args.frames} frames x 3 methods, {failures} failures")
    return EXIT_OK if failures == 0 else EXIT_RUNTIME


def cmd_selftest(args):
    checks = run_checks()
    for name, ok, detail in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
    failed = sum(not ok for _, ok, _ in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_RUNTIME


def build_parser():
    parser = argparse.ArgumentParser(prog="stbc-papr", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ccdf", help="Monte Carlo CCDF of PAPR per method")
    _add_config_flags(p)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.set_defaults(func=cmd_ccdf)

    p = sub.add_parser("theory", help="closed-form CCDF for independent samples")
    p.add_argument("--n", type=int, default=512)
    p.add_argument("--n-tx", dest="n_tx", type=int, default=1)
    p.add_argument("--threshold-start", dest="threshold_start", type=float, default=4.0)
    p.add_argument("--threshold-stop", dest="threshold_stop", type=float, default=13.0)
    p.add_argument("--threshold-step", dest="threshold_step", type=float, default=0.1)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_theory)

    p = sub.add_parser("roundtrip", help="noiseless bit-exactness check for none/slm/pts")
    _add_config_flags(p)
    p.add_argument("--frames", type=int, default=100)
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("selftest", help="worked examples against brute-force oracles")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (OSError, StbcPaprError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
