"""Full pipeline evaluation over 1D and 2D parameter grids, plus figure presets."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .constants import TWO_PI
from .dynamics import (
    StabilityReport,
    build_diffusion,
    build_drift,
    check_stability,
    solve_lyapunov,
)
from .errors import ConfigurationError, DegenerateError, PhysicalityError
from .measures import PAIRS, CorrelationReport, correlation_report, extract_pair, symplectic_eigenvalues
from .model import SystemParams, feedback_rates, thermal_occupancy

AXIS_PARAMETERS = ("delta_a", "delta_b_tilde", "tau", "beta", "T", "xi", "g_gb_eff")
_FREQUENCY_AXES = {"delta_a", "delta_b_tilde", "xi", "g_gb_eff"}


@dataclass(frozen=True)
class AxisSpec:
    """Linear grid over one parameter, in internal units (rad/s, K, rad).

    ``unit`` divides the values for display; it defaults to 2*pi for
    frequency-like parameters so that output is in Hz.
    """

    name: str
    start: float
    stop: float
    points: int = 101
    scale: str = "linear"
    unit: Optional[float] = None
    label: Optional[str] = None

    def __post_init__(self):
        if self.name not in AXIS_PARAMETERS:
            raise ConfigurationError(
                f"invalid axis parameter {self.name!r}; choose from {', '.join(AXIS_PARAMETERS)}"
            )
        if self.scale != "linear":
            raise ConfigurationError(f"unsupported axis scale {self.scale!r}")
        if int(self.points) != self.points or self.points < 2:
            raise ConfigurationError(f"axis {self.name}: points must be an integer >= 2")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ConfigurationError(f"axis {self.name}: bounds must be finite")
        if self.start == self.stop:
            raise ConfigurationError(f"axis {self.name}: start and stop must differ")

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, int(self.points))

    @property
    def display_unit(self) -> float:
        if self.unit is not None:
            return self.unit
        return TWO_PI if self.name in _FREQUENCY_AXES else 1.0

    @property
    def display_values(self) -> np.ndarray:
        return self.values / self.display_unit

    def with_points(self, points: int) -> "AxisSpec":
        return AxisSpec(self.name, self.start, self.stop, points, self.scale, self.unit, self.label)


@dataclass(frozen=True)
class PointResult:
    """Outcome of one pipeline evaluation.

    ``reports`` is ``None`` when the point is unstable or the measures could
    not be evaluated; ``error`` then says why.
    """

    params: SystemParams
    stability: StabilityReport
    reports: Optional[tuple] = None
    min_symplectic: Optional[float] = None
    covariance: Optional[np.ndarray] = field(default=None, repr=False)
    error: Optional[str] = None

    @property
    def stable(self) -> bool:
        return self.stability.stable

    @property
    def physical(self) -> Optional[bool]:
        if self.min_symplectic is None:
            return None
        return self.min_symplectic >= 0.5 - 1e-9

    def report(self, pair) -> Optional[CorrelationReport]:
        if self.reports is None:
            return None
        return self.reports[PAIRS.index(tuple(pair))]


@dataclass(frozen=True)
class SweepResult:
    axes: tuple
    records: tuple  # row-major: first axis is the slow index

    @property
    def shape(self) -> tuple:
        return tuple(int(ax.points) for ax in self.axes)

    def grid(self, pair, quantity: str = "e_n") -> np.ndarray:
        """Array of one measure over the grid, NaN where absent."""
        out = np.full(len(self.records), np.nan)
        for i, rec in enumerate(self.records):
            rep = rec.report(pair)
            if rep is not None:
                out[i] = getattr(rep, quantity)
        return out.reshape(self.shape)

    def coordinates(self):
        """Grid coordinates in row-major order, in internal units."""
        return list(itertools.product(*(ax.values for ax in self.axes)))


def pipeline(params: SystemParams):
    """Drift, diffusion and feedback rates for ``params``."""
    rates = feedback_rates(params.gamma_a, params.delta_a, params.tau, params.beta)
    L = build_drift(params, rates, params.g_gb_eff)
    K = build_diffusion(
        params,
        rates,
        thermal_occupancy(params.omega_a, params.T),
        thermal_occupancy(params.omega_b, params.T),
        thermal_occupancy(params.omega_m, params.T),
    )
    return rates, L, K


def evaluate_point(params: SystemParams) -> PointResult:
    _, L, K = pipeline(params)
    stability = check_stability(L)
    if not stability.stable:
        return PointResult(params, stability, error="unstable")
    try:
        V = solve_lyapunov(L, K)
    except DegenerateError as exc:
        return PointResult(params, stability, error=str(exc))
    min_nu = float(np.min(symplectic_eigenvalues(V)))
    try:
        reports = tuple(correlation_report(extract_pair(V, pair)) for pair in PAIRS)
    except (PhysicalityError, DegenerateError) as exc:
        return PointResult(params, stability, None, min_nu, V, error=str(exc))
    return PointResult(params, stability, reports, min_nu, V)


def sweep(base: SystemParams, axes, threads: int = 1) -> SweepResult:
    axes = tuple(axes)
    if not 1 <= len(axes) <= 2:
        raise ConfigurationError("a sweep takes one or two axes")
    names = [ax.name for ax in axes]
    if len(set(names)) != len(names):
        raise ConfigurationError(f"axis parameters must be distinct, got {names}")
    points = [
        base.replace(**dict(zip(names, map(float, coords))))
        for coords in itertools.product(*(ax.values for ax in axes))
    ]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = tuple(pool.map(evaluate_point, points))
    else:
        records = tuple(map(evaluate_point, points))
    return SweepResult(axes=axes, records=records)


def figure_preset(name: str, points: Optional[int] = None):
    """Base parameters and axes for the named figure reproduction.

    Detuning axes are displayed in units of the mechanical frequency.
    """
    p = SystemParams()
    wm = p.omega_m
    g48 = TWO_PI * 4.8e6
    presets = {
        "fig2": (
            p.replace(tau=0.9, beta=math.pi, T=0.01, xi=p.gamma_a),
            (
                AxisSpec("delta_a", -2 * wm, 2 * wm, unit=wm, label="delta_a/omega_m"),
                AxisSpec("delta_b_tilde", 0.0, 2 * wm, unit=wm, label="delta_b_tilde/omega_m"),
            ),
        ),
        "fig3": (
            p.replace(delta_b_tilde=0.9 * wm, delta_a=-wm, xi=p.gamma_a),
            (AxisSpec("tau", 0.0, 0.999), AxisSpec("beta", 0.0, TWO_PI)),
        ),
        "fig4a": (
            p.replace(g_gb_eff=g48, tau=0.98, xi=p.gamma_a),
            (AxisSpec("T", 0.0, 4.0),),
        ),
        "fig4b": (
            p.replace(g_gb_eff=g48, tau=0.4, T=0.01),
            (AxisSpec("xi", 0.0, TWO_PI * 2e6),),
        ),
        "fig4c": (
            p.replace(g_gb_eff=g48, T=0.01, xi=p.gamma_a),
            (AxisSpec("tau", 0.0, 0.999),),
        ),
        "fig5": (
            p.replace(g_gb_eff=g48, tau=0.98, beta=math.pi, xi=p.gamma_a),
            (AxisSpec("T", 0.0, 4.0),),
        ),
    }
    if name not in presets:
        raise ConfigurationError(f"unknown figure preset {name!r}; choose from {', '.join(presets)}")
    base, axes = presets[name]
    if points is not None:
        axes = tuple(ax.with_points(points) for ax in axes)
    return base, axes


FIGURES = ("fig2", "fig3", "fig4a", "fig4b", "fig4c", "fig5")
