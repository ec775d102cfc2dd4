"""Steady-state entanglement and EPR steering in a coherent-feedback cavity magnomechanical system."""

from .constants import CONSTANTS, HBAR, K_B
from .dynamics import (
    StabilityReport,
    build_diffusion,
    build_drift,
    check_stability,
    solve_lyapunov,
)
from .errors import (
    ConfigurationError,
    DegenerateError,
    DomainError,
    NumericalError,
    PhysicalityError,
    StabilityError,
)
from .measures import (
    CorrelationReport,
    TwoModeCM,
    classify_steering,
    extract_pair,
    gaussian_steering,
    log_negativity,
    steering_asymmetry,
    symplectic_eigenvalues,
)
from .model import (
    DriveParams,
    FeedbackRates,
    SteadyState,
    SystemParams,
    effective_coupling,
    feedback_rates,
    rabi_frequency,
    steady_state,
    thermal_occupancy,
)
from .sweep import AxisSpec, PointResult, SweepResult, evaluate_point, figure_preset, sweep

__version__ = "0.1.0"
