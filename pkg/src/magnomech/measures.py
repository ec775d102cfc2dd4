"""Two-mode Gaussian correlation measures: logarithmic negativity and EPR steering.

Covariances follow the vacuum-variance-1/2 convention, so a state is physical
when all its symplectic eigenvalues are at least 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, DomainError, PhysicalityError

MODES = ("photon", "magnon", "phonon")
MODE_ROWS = {"photon": (0, 1), "magnon": (2, 3), "phonon": (4, 5)}
# Output order of the three bipartitions: ab, am, bm.
PAIRS = (("photon", "magnon"), ("photon", "phonon"), ("magnon", "phonon"))
PAIR_TAGS = {PAIRS[0]: "ab", PAIRS[1]: "am", PAIRS[2]: "bm"}

ZERO_THRESHOLD = 1e-10
CLIP_TOL = 1e-12
PHYSICALITY_TOL = 1e-9

CLASSIFICATIONS = (
    "no-way", "one-way-AtoB", "one-way-BtoA", "two-way", "separable-unsteerable",
)


@dataclass(frozen=True)
class TwoModeCM:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    labels: tuple = ("A", "B")

    @property
    def matrix(self) -> np.ndarray:
        return np.block([[self.A, self.C], [self.C.T, self.B]])

    @classmethod
    def from_matrix(cls, sigma, labels=("A", "B")) -> "TwoModeCM":
        sigma = np.asarray(sigma, dtype=float)
        return cls(A=sigma[:2, :2].copy(), B=sigma[2:, 2:].copy(),
                   C=sigma[:2, 2:].copy(), labels=tuple(labels))

    def swapped(self) -> "TwoModeCM":
        return TwoModeCM(A=self.B, B=self.A, C=self.C.T, labels=self.labels[::-1])


@dataclass(frozen=True)
class CorrelationReport:
    pair: tuple
    e_n: float
    s_ab: float
    s_ba: float
    s_asym: float
    classification: str
    physical: bool = True

    @property
    def tag(self) -> str:
        return PAIR_TAGS.get(tuple(self.pair), "-".join(self.pair))


def symplectic_form(n: int) -> np.ndarray:
    return np.kron(np.eye(n), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def _check_symmetric(sigma: np.ndarray):
    scale = max(float(np.max(np.abs(sigma))), 1e-300)
    if np.max(np.abs(sigma - sigma.T)) > 1e-10 * scale:
        raise DomainError("covariance matrix is not symmetric")


def symplectic_eigenvalues(sigma) -> np.ndarray:
    """Moduli of the eigenvalues of ``i Omega sigma``, one per mode, ascending."""
    sigma = np.asarray(sigma, dtype=float)
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1] or sigma.shape[0] % 2:
        raise DomainError(f"expected a 2n x 2n matrix, got shape {sigma.shape}")
    _check_symmetric(sigma)
    n = sigma.shape[0] // 2
    moduli = np.sort(np.abs(np.linalg.eigvals(1j * symplectic_form(n) @ sigma)))
    # eigenvalues come in +/- pairs
    return 0.5 * (moduli[0::2] + moduli[1::2])


def is_physical(sigma, tol: float = PHYSICALITY_TOL) -> bool:
    return bool(np.min(symplectic_eigenvalues(sigma)) >= 0.5 - tol)


def extract_pair(V, pair) -> TwoModeCM:
    first, second = pair
    if first == second:
        raise DomainError(f"pair labels must be distinct, got {pair!r}")
    try:
        rows = MODE_ROWS[first] + MODE_ROWS[second]
    except KeyError as exc:
        raise DomainError(f"unknown mode label {exc.args[0]!r}; use one of {MODES}") from None
    V = np.asarray(V, dtype=float)
    return TwoModeCM.from_matrix(V[np.ix_(rows, rows)], labels=(first, second))


def partial_transpose(cm: TwoModeCM) -> np.ndarray:
    """Covariance after flipping the momentum of the second mode."""
    flip = np.diag([1.0, 1.0, 1.0, -1.0])
    return flip @ cm.matrix @ flip


def min_pt_symplectic_eigenvalue(cm: TwoModeCM, variant: str = "standard") -> float:
    """Smallest symplectic eigenvalue of the partial transpose, in closed form.

    ``variant="single_det_c"`` uses ``det A + det B - det C`` in place of the
    invariant ``det A + det B - 2 det C``; it is kept for comparison only.
    """
    det_a = np.linalg.det(cm.A)
    det_b = np.linalg.det(cm.B)
    det_c = np.linalg.det(cm.C)
    det_s = np.linalg.det(cm.matrix)
    if variant == "standard":
        sigma_tilde = det_a + det_b - 2.0 * det_c
    elif variant == "single_det_c":
        sigma_tilde = det_a + det_b - det_c
    else:
        raise DomainError(f"unknown variant {variant!r}")
    disc = sigma_tilde**2 - 4.0 * det_s
    if disc < 0:
        if disc < -CLIP_TOL * max(sigma_tilde**2, 1e-300):
            raise PhysicalityError(f"negative discriminant {disc:.3e} in symplectic spectrum")
        disc = 0.0
    lam_sq = 0.5 * (sigma_tilde - math.sqrt(disc))
    if lam_sq < 0:
        if lam_sq < -CLIP_TOL * max(abs(sigma_tilde), 1e-300):
            raise PhysicalityError(f"negative squared symplectic eigenvalue {lam_sq:.3e}")
        lam_sq = 0.0
    return math.sqrt(lam_sq)


def log_negativity(cm: TwoModeCM, variant: str = "standard") -> float:
    """Logarithmic negativity in nats."""
    lam = min_pt_symplectic_eigenvalue(cm, variant)
    if lam == 0.0:
        return math.inf
    return max(0.0, -math.log(2.0 * lam))


def gaussian_steering(cm: TwoModeCM, direction: str = "AtoB") -> float:
    """Gaussian EPR steerability in nats.

    ``AtoB`` measures how far the first party steers the second and uses the
    Schur complement ``B - C^T A^{-1} C``; ``BtoA`` swaps the roles.
    """
    if direction == "AtoB":
        cond, steered, cross = cm.A, cm.B, cm.C
    elif direction == "BtoA":
        cond, steered, cross = cm.B, cm.A, cm.C.T
    else:
        raise DomainError(f"unknown steering direction {direction!r}")
    if abs(np.linalg.det(cond)) <= 1e-300:
        raise DegenerateError("conditioning block of the steering party is singular")
    schur = steered - cross.T @ np.linalg.solve(cond, cross)
    schur = 0.5 * (schur + schur.T)
    total = sum(-math.log(2.0 * nu) for nu in symplectic_eigenvalues(schur) if 2.0 * nu < 1.0)
    return max(0.0, total)


def steering_asymmetry(s_ab: float, s_ba: float) -> float:
    if s_ab < 0 or s_ba < 0:
        raise DomainError("steering values must be non-negative")
    return abs(s_ab - s_ba)


def classify_steering(e_n: float, s_ab: float, s_ba: float,
                      threshold: float = ZERO_THRESHOLD) -> str:
    if e_n <= threshold:
        return "separable-unsteerable"
    ab = s_ab > threshold
    ba = s_ba > threshold
    if ab and ba:
        return "two-way"
    if ab:
        return "one-way-AtoB"
    if ba:
        return "one-way-BtoA"
    return "no-way"


def correlation_report(cm: TwoModeCM) -> CorrelationReport:
    e_n = log_negativity(cm)
    s_ab = gaussian_steering(cm, "AtoB")
    s_ba = gaussian_steering(cm, "BtoA")
    return CorrelationReport(
        pair=tuple(cm.labels),
        e_n=e_n,
        s_ab=s_ab,
        s_ba=s_ba,
        s_asym=steering_asymmetry(s_ab, s_ba),
        classification=classify_steering(e_n, s_ab, s_ba),
        physical=is_physical(cm.matrix),
    )
