"""Compare feedback-modified cavity damping with the injected noise, versus reflectivity.

A cavity mode damped at ``gamma_fb`` but driven by noise ``gamma_a * F`` settles at a
quadrature variance ``F gamma_a / (2 gamma_fb)``; values below 1/2 signal a
covariance matrix that violates the uncertainty principle. The script prints this
ratio next to the smallest symplectic eigenvalue of the full three-mode state at
the Fig. 2 operating point.
"""

import math

import numpy as np

from magnomech.model import feedback_rates
from magnomech.sweep import evaluate_point, figure_preset

base = figure_preset("fig2")[0].replace(delta_a=-2 * math.pi * 10e6, delta_b_tilde=0.9 * 2 * math.pi * 10e6)

print(f"{'tau':>6} {'gamma_fb/gamma_a':>17} {'F':>8} {'cavity var':>11} {'min nu(V)':>10} "
      f"{'E_ab':>7} {'E_am':>7} {'E_bm':>7}")
for tau in np.linspace(0.0, 0.98, 15):
    rates = feedback_rates(base.gamma_a, base.delta_a, tau, base.beta)
    res = evaluate_point(base.replace(tau=float(tau)))
    e = [r.e_n for r in res.reports] if res.reports else [float("nan")] * 3
    print(
        f"{tau:6.3f} {rates.gamma_fb / base.gamma_a:17.3f} {rates.noise_factor:8.4f} "
        f"{rates.noise_factor * base.gamma_a / (2 * rates.gamma_fb):11.4f} "
        f"{res.min_symplectic:10.4f} {e[0]:7.3f} {e[1]:7.3f} {e[2]:7.3f}"
    )
