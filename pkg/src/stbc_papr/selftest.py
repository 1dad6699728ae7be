"""Worked-example checks against brute-force oracles.

The oracles here evaluate the DFT sum term by term with :mod:`cmath` and
enumerate phase choices with :mod:`itertools`; they share no code with the
FFT-based paths they check.
"""

import cmath
import itertools
import math

import numpy as np

from .metrics import compute_papr, theoretical_ccdf
from .modem import CarrierMap, qpsk_demodulate, qpsk_modulate
from .numerics import forward_transform, inverse_transform, oversampled_synthesis
from .reduction import PtsPlan, SlmCodebook, pts_optimize, slm_select


def direct_synthesis(X, L=1):
    """x(n) = 1/sqrt(N) sum_k X_k exp(j 2 pi k' n / LN), k' the signed frequency of bin k."""
    n_bins = len(X)
    out = []
    for n in range(L * n_bins):
        acc = 0j
        for k, value in enumerate(X):
            freq = k if k < n_bins // 2 else k - n_bins
            acc += value * cmath.exp(2j * math.pi * freq * n / (L * n_bins))
        out.append(acc / math.sqrt(n_bins))
    return out


def direct_papr(samples):
    powers = [abs(s) ** 2 for s in samples]
    return max(powers) / (sum(powers) / len(powers))


def brute_force_slm(X_used, routes, occupied, n_total, L=1):
    best = None
    for u, route in enumerate(routes):
        X = [0j] * n_total
        for i, b in enumerate(occupied):
            X[b] = X_used[i] * route[i]
        papr = direct_papr(direct_synthesis(X, L))
        if best is None or papr < best[1]:
            best = (u, papr)
    return best


def brute_force_pts(blocks, alphabet, L=1):
    """Exhaustive search over b with b[0] = 1; returns (b, papr, signal)."""
    partial = [direct_synthesis(block, L) for block in blocks]
    best = None
    for tail in itertools.product(alphabet, repeat=len(blocks) - 1):
        b = (1,) + tail
        signal = [sum(b[v] * partial[v][n] for v in range(len(b))) for n in range(len(partial[0]))]
        papr = direct_papr(signal)
        if best is None or papr < best[1]:
            best = (b, papr, signal)
    return best


def _close(a, b, tol=1e-12):
    return np.allclose(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex), rtol=0, atol=tol)


def run_checks():
    """Return ``[(name, passed, detail), ...]``."""
    checks = []

    def check(name, passed, detail=""):
        checks.append((name, bool(passed), detail))

    j = 1j
    check("inverse [1,0,0,0]", _close(inverse_transform([1, 0, 0, 0]), [0.5] * 4))
    check("inverse [1,1,1,1]", _close(inverse_transform([1, 1, 1, 1]), [2, 0, 0, 0]))
    check("inverse [1,j,-1,-j]", _close(inverse_transform([1, j, -1, -j]), direct_synthesis([1, j, -1, -j])))
    check("forward [2,0,0,0]", _close(forward_transform([2, 0, 0, 0]), [1, 1, 1, 1]))
    x = oversampled_synthesis([1, 1, 1, 1], 4)
    check("oversampled decimation", _close(x[::4], [2, 0, 0, 0]))
    check("oversampled vs direct sum", _close(x, direct_synthesis([1, 1, 1, 1], 4)))

    check("papr impulse", math.isclose(compute_papr([2, 0, 0, 0]).linear, 4.0))
    check("papr [1+j,1,0,-j]", math.isclose(compute_papr([1 + j, 1, 0, -j]).linear, 2.0))
    check("theory N=1 0 dB", math.isclose(theoretical_ccdf(1, 1, 0.0), math.exp(-1)))
    check("theory N=1 Mt=2", math.isclose(theoretical_ccdf(1, 2, 10 * math.log10(math.log(2))), 0.75))
    gamma = 10 ** 0.8
    check("theory N=512 8 dB", math.isclose(theoretical_ccdf(512, 1, 8.0), 1 - (1 - math.exp(-gamma)) ** 512))

    bits = np.array([0, 0, 0, 1, 1, 1, 1, 0], dtype=np.uint8)
    check("qpsk round trip", np.array_equal(qpsk_demodulate(qpsk_modulate(bits)), bits))
    cmap = CarrierMap.centered(512, 301)
    check("carrier map 512/301", set(cmap.occupied) == set(range(151)) | set(range(362, 512)))

    # SLM worked example: N=4, every bin used, identity route vs [1,1,1,j]
    full = CarrierMap.centered(4, 4)
    routes = [[1, 1, 1, 1], [1, 1, 1, j]]
    u_ref, papr_ref = brute_force_slm([1, 1, 1, 1], routes, full.occupied, 4)
    _, side, papr = slm_select(np.ones(4), SlmCodebook(np.array(routes)), full, 1)
    check(
        "slm N=4 worked example",
        side.slm_index == u_ref == 1 and math.isclose(papr.linear, papr_ref) and math.isclose(papr_ref, 2.5),
        f"u={side.slm_index} papr={papr.linear:.12g} oracle u={u_ref} papr={papr_ref:.12g}",
    )

    # PTS worked example: N=4, V=2, X=[1,1,1,1], sub-blocks [1,1,0,0] and [0,0,1,1]
    alphabet = (1, -1, j, -j)
    b_ref, papr_ref, sig_ref = brute_force_pts([[1, 1, 0, 0], [0, 0, 1, 1]], alphabet)
    signal, side, papr = pts_optimize(np.ones(4), PtsPlan(2, "adjacent", alphabet, "exhaustive"), full, 1)
    check(
        "pts V=2 worked example",
        tuple(side.phases) == tuple(b_ref) == (1, -1)
        and math.isclose(papr.linear, papr_ref)
        and math.isclose(papr_ref, 2.0)
        and _close(signal, sig_ref)
        and _close(signal, [0, 1 + j, 0, 1 - j]),
        f"b={side.phases} papr={papr.linear:.12g} oracle b={b_ref} papr={papr_ref:.12g}",
    )
    return checks
