"""System parameters and mean-field quantities of the feedback magnomechanical system.

All rates and frequencies are angular (rad/s). Use :meth:`SystemParams.from_hz`
to build parameters from ordinary frequencies.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, fields, replace

import numpy as np

from .constants import (
    DEFAULT_FREQUENCIES_HZ,
    DEFAULT_TEMPERATURE,
    DRIVE_FIELD,
    GYROMAGNETIC_RATIO,
    HBAR,
    K_B,
    MECHANICAL_Q_WARNING,
    SINGLE_MAGNON_COUPLING,
    SPHERE_DIAMETER,
    TWO_PI,
    YIG_SPIN_DENSITY,
)
from .errors import DegenerateError, DomainError

_DETUNINGS = ("delta_a", "delta_b_tilde")
_RATES = (
    "omega_a", "omega_b", "omega_m", "gamma_a", "gamma_b", "gamma_m",
    "g_ga", "g_gb_eff", "xi",
)


@dataclass(frozen=True)
class SystemParams:
    """Rates of the cavity, magnon and phonon modes plus feedback settings.

    ``delta_b_tilde`` is the effective magnon detuning, already including the
    magnomechanical and Kerr shifts; it is treated as a real tunable input.
    ``T`` is in kelvin, ``tau`` is the beam-splitter reflectivity and ``beta``
    the feedback phase in radians.
    """

    omega_a: float = TWO_PI * DEFAULT_FREQUENCIES_HZ["omega_a"]
    omega_b: float = TWO_PI * DEFAULT_FREQUENCIES_HZ["omega_b"]
    omega_m: float = TWO_PI * DEFAULT_FREQUENCIES_HZ["omega_m"]
    gamma_a: float = TWO_PI * DEFAULT_FREQUENCIES_HZ["gamma_a"]
    gamma_b: float = TWO_PI * DEFAULT_FREQUENCIES_HZ["gamma_b"]
    gamma_m: float = TWO_PI * DEFAULT_FREQUENCIES_HZ["gamma_m"]
    g_ga: float = TWO_PI * DEFAULT_FREQUENCIES_HZ["g_ga"]
    g_gb_eff: float = TWO_PI * DEFAULT_FREQUENCIES_HZ["g_gb_eff"]
    xi: float = TWO_PI * 1e6
    delta_a: float = -TWO_PI * 10e6
    delta_b_tilde: float = 0.9 * TWO_PI * 10e6
    T: float = DEFAULT_TEMPERATURE
    tau: float = 0.9
    beta: float = math.pi

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not math.isfinite(value):
                raise DomainError(f"{f.name} must be finite, got {value!r}")
        for name in _RATES:
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be non-negative, got {getattr(self, name)!r}")
        if self.T < 0:
            raise DomainError(f"T must be non-negative, got {self.T!r}")
        if not 0.0 <= self.tau <= 1.0:
            raise DomainError(f"tau must lie in [0, 1], got {self.tau!r}")
        if self.gamma_m > 0 and self.omega_m / self.gamma_m < MECHANICAL_Q_WARNING:
            warnings.warn(
                f"mechanical quality factor {self.omega_m / self.gamma_m:.3g} is below "
                f"{MECHANICAL_Q_WARNING:g}; the Markovian noise model is unreliable",
                stacklevel=3,
            )

    @classmethod
    def from_hz(cls, **kwargs) -> "SystemParams":
        """Build from ordinary frequencies (Hz); ``T``, ``tau``, ``beta`` pass through."""
        converted = {
            k: (TWO_PI * v if k in _RATES or k in _DETUNINGS else v)
            for k, v in kwargs.items()
        }
        return cls(**converted)

    def replace(self, **changes) -> "SystemParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class DriveParams:
    """Microwave drive of the magnon mode and optional cavity drive."""

    b0: float = DRIVE_FIELD
    sphere_diameter: float = SPHERE_DIAMETER
    rho_spin: float = YIG_SPIN_DENSITY
    kappa_gyro: float = GYROMAGNETIC_RATIO
    cavity_drive_amp: float = 0.0
    g_gb_single: float = SINGLE_MAGNON_COUPLING

    @property
    def spin_count(self) -> float:
        return self.rho_spin * math.pi / 6.0 * self.sphere_diameter**3


@dataclass(frozen=True)
class FeedbackRates:
    gamma_fb: float
    delta_fb: float
    psi: float
    noise_factor: float


@dataclass(frozen=True)
class SteadyState:
    a_mean: complex
    b_mean: complex
    x_mean: float
    g_eff: float


def thermal_occupancy(omega: float, T: float) -> float:
    """Bose-Einstein occupancy ``1/(exp(hbar omega / k_B T) - 1)``."""
    if not omega > 0:
        raise DomainError(f"invalid frequency {omega!r}: must be positive")
    if T < 0:
        raise DomainError(f"temperature must be non-negative, got {T!r}")
    if T == 0:
        return 0.0
    x = HBAR * omega / (K_B * T)
    if x > 700.0:
        # expm1 overflows; exp(-x) is the exact leading term here
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def feedback_rates(gamma_a: float, delta_a: float, tau: float, beta: float) -> FeedbackRates:
    """Cavity decay and detuning renormalised by the coherent feedback loop.

    The beam splitter is taken as lossless, so the transmission is
    ``psi = sqrt(1 - tau**2)``.
    """
    if not 0.0 <= tau <= 1.0:
        raise DomainError(f"tau must lie in [0, 1], got {tau!r}")
    psi = math.sqrt(1.0 - tau * tau)
    return FeedbackRates(
        gamma_fb=gamma_a * (1.0 - 2.0 * tau * math.cos(beta)),
        delta_fb=delta_a + 2.0 * gamma_a * tau * math.sin(beta),
        psi=psi,
        noise_factor=psi * psi * abs(1.0 - tau * complex(math.cos(beta), math.sin(beta))) ** 2,
    )


def rabi_frequency(drive: DriveParams) -> float:
    """Magnon drive Rabi frequency ``(sqrt(5)/4) kappa sqrt(N) B0``."""
    if drive.sphere_diameter <= 0:
        raise DomainError(f"sphere diameter must be positive, got {drive.sphere_diameter!r}")
    if drive.b0 < 0:
        raise DomainError(f"drive field must be non-negative, got {drive.b0!r}")
    return math.sqrt(5.0) / 4.0 * drive.kappa_gyro * math.sqrt(drive.spin_count) * drive.b0


def effective_coupling(g_gb_single: float, b_mean: complex) -> float:
    """Magnitude of the drive-enhanced magnomechanical coupling, ``sqrt(2) g |<b>|``."""
    return abs(1j * math.sqrt(2.0) * g_gb_single * b_mean)


def steady_state(params: SystemParams, drive: DriveParams, mode: str = "exact") -> SteadyState:
    """Mean-field amplitudes of the cavity, magnon and mechanical modes.

    ``exact`` solves the coupled 2x2 complex linear system for <a>, <b>;
    ``approximate`` uses the far-detuned closed form for <b> and then
    back-substitutes for <a>.
    """
    rates = feedback_rates(params.gamma_a, params.delta_a, params.tau, params.beta)
    omega = rabi_frequency(drive)
    drive_a = rates.psi * drive.cavity_drive_amp
    g = params.g_ga

    if mode == "exact":
        system = np.array(
            [
                [1j * params.delta_b_tilde + params.gamma_b, 1j * g],
                [1j * g, 1j * rates.delta_fb + rates.gamma_fb],
            ]
        )
        rhs = np.array([omega, -1j * drive_a])
        if abs(np.linalg.det(system)) <= 1e-300 or np.linalg.cond(system) > 1e14:
            raise DegenerateError("mean-field linear system is singular")
        b_mean, a_mean = (complex(v) for v in np.linalg.solve(system, rhs))
    elif mode == "approximate":
        denom = g * g - params.delta_b_tilde * rates.delta_fb
        scale = max(g * g, abs(params.delta_b_tilde * rates.delta_fb), 1e-300)
        if abs(denom) <= 1e-12 * scale:
            raise DegenerateError(
                "degenerate operating point: g_ga**2 equals delta_b_tilde * delta_fb"
            )
        b_mean = (1j * omega * rates.delta_fb - g * drive_a) / denom
        a_mean = -(1j * g * b_mean + 1j * drive_a) / (1j * rates.delta_fb + rates.gamma_fb)
    else:
        raise DomainError(f"unknown steady-state mode {mode!r}")

    if params.omega_m <= 0:
        raise DomainError("omega_m must be positive to compute the mechanical displacement")
    x_mean = -(drive.g_gb_single / params.omega_m) * abs(b_mean) ** 2
    return SteadyState(
        a_mean=a_mean,
        b_mean=b_mean,
        x_mean=x_mean,
        g_eff=effective_coupling(drive.g_gb_single, b_mean),
    )
