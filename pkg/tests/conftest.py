import numpy as np
import pytest


def dft_synthesis(X, L=1):
    """Direct matrix evaluation of x(n) = 1/sqrt(N) sum_k X_k exp(j 2 pi k' n / LN)."""
    X = np.asarray(X, dtype=complex)
    n_bins = X.size
    k = np.arange(n_bins)
    freq = np.where(k < n_bins // 2, k, k - n_bins)
    n = np.arange(L * n_bins)
    return np.exp(2j * np.pi * np.outer(n, freq) / (L * n_bins)) @ X / np.sqrt(n_bins)


def random_qpsk(rng, size):
    return (rng.choice([-1.0, 1.0], size) + 1j * rng.choice([-1.0, 1.0], size)) / np.sqrt(2)


@pytest.fixture
def rng():
    return np.random.default_rng(20131)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(module.REPORT):
        terminalreporter.write_line(line)
