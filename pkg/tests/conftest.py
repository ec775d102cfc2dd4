import math

import numpy as np
import pytest

from magnomech.model import SystemParams

ACCEPTANCE_LINES = []


def random_stable_pair(rng, n=6, margin=0.1):
    """Random drift matrix shifted to be Hurwitz, and a PSD diagonal diffusion."""
    M = rng.normal(size=(n, n)) * rng.choice([1.0, 10.0, 100.0])
    shift = np.max(np.linalg.eigvals(M).real) + margin * (1 + rng.random())
    L = M - shift * np.eye(n)
    K = np.diag(rng.random(n) * rng.choice([1.0, 1e3]))
    return L, K


def two_mode_squeezed(r):
    c, s = math.cosh(2 * r) / 2, math.sinh(2 * r) / 2
    return np.block([[c * np.eye(2), s * np.diag([1.0, -1.0])], [s * np.diag([1.0, -1.0]), c * np.eye(2)]])


@pytest.fixture
def fig2_point():
    wm = 2 * math.pi * 10e6
    return SystemParams(tau=0.9, beta=math.pi, T=0.01, xi=2 * math.pi * 1e6,
                        delta_a=-wm, delta_b_tilde=0.9 * wm)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
