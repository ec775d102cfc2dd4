"""Linearised fluctuation dynamics: drift, diffusion, stability and the steady covariance.

Quadrature ordering throughout is (X_a, Y_a, X_b, Y_b, x, y). Covariances use
the convention in which the vacuum has variance 1/2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, NumericalError, StabilityError
from .model import FeedbackRates, SystemParams

STABILITY_RTOL = 1e-9


@dataclass(frozen=True)
class StabilityReport:
    max_real_part: float
    eigenvalues: np.ndarray
    stable: bool

    def __str__(self):
        state = "stable" if self.stable else "UNSTABLE"
        return f"{state}: max Re(eigenvalue) = {self.max_real_part:.12g} rad/s"


def build_drift(params: SystemParams, rates: FeedbackRates, g_eff: float) -> np.ndarray:
    g = params.g_ga
    xi = params.xi
    db = params.delta_b_tilde
    L = np.zeros((6, 6))
    L[0, 0] = L[1, 1] = -rates.gamma_fb
    L[0, 1] = rates.delta_fb
    L[1, 0] = -rates.delta_fb
    L[0, 3] = g
    L[1, 2] = -g
    L[2, 1] = g
    L[3, 0] = -g
    L[2, 2] = -params.gamma_b + xi
    L[3, 3] = -params.gamma_b - xi
    L[2, 3] = db
    L[3, 2] = -db
    L[2, 4] = -g_eff
    L[5, 3] = g_eff
    L[4, 5] = params.omega_m
    L[5, 4] = -params.omega_m
    L[5, 5] = -params.gamma_m
    return L


def build_diffusion(
    params: SystemParams, rates: FeedbackRates, n_a: float, n_b: float, n_m: float
) -> np.ndarray:
    cavity = params.gamma_a * rates.noise_factor * (2 * n_a + 1)
    magnon = params.gamma_b * (2 * n_b + 1)
    return np.diag([cavity, cavity, magnon, magnon, 0.0, params.gamma_m * (2 * n_m + 1)])


def check_stability(L: np.ndarray) -> StabilityReport:
    """Eigenvalues of ``L``; stable when every real part is below ``-1e-9 ||L||_inf``."""
    L = np.asarray(L, dtype=float)
    try:
        eigenvalues = np.linalg.eigvals(L)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigenvalue computation did not converge: {exc}") from exc
    max_real = float(np.max(eigenvalues.real))
    threshold = -STABILITY_RTOL * np.linalg.norm(L, np.inf)
    return StabilityReport(max_real_part=max_real, eigenvalues=eigenvalues,
                           stable=bool(max_real < threshold))


def lyapunov_operator(L: np.ndarray) -> np.ndarray:
    """Matrix of ``V -> L V + V L^T`` acting on row-major ``vec(V)``."""
    n = L.shape[0]
    eye = np.eye(n)
    return np.kron(L, eye) + np.kron(eye, L)


def solve_lyapunov(L: np.ndarray, K: np.ndarray) -> np.ndarray:
    """Solve ``L V + V L^T + K = 0`` for the stationary covariance ``V``.

    The equation is vectorised into an ``n^2`` linear system, solved densely,
    refined once against the residual and symmetrised.
    """
    L = np.asarray(L, dtype=float)
    K = np.asarray(K, dtype=float)
    report = check_stability(L)
    if not report.stable:
        raise StabilityError(f"drift matrix is not stable ({report})", report)
    n = L.shape[0]
    op = lyapunov_operator(L)
    try:
        V = np.linalg.solve(op, -K.reshape(-1)).reshape(n, n)
        residual = L @ V + V @ L.T + K
        V = V + np.linalg.solve(op, -residual.reshape(-1)).reshape(n, n)
    except np.linalg.LinAlgError as exc:
        raise DegenerateError(f"vectorised Lyapunov system is singular: {exc}") from exc
    return 0.5 * (V + V.T)


def lyapunov_residual(L: np.ndarray, V: np.ndarray, K: np.ndarray) -> float:
    """Frobenius norm of ``L V + V L^T + K``."""
    return float(np.linalg.norm(L @ V + V @ L.T + K))


def format_matrix(M: np.ndarray) -> str:
    """Row-major plain-text dump with 17 significant digits."""
    return "\n".join(" ".join(f"{x:.16e}" for x in row) for row in np.asarray(M)) + "\n"
