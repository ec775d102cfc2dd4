"""Physical constants (CODATA 2018, exact SI values) and the default operating point."""

import math

HBAR = 1.054571817e-34  # J s
K_B = 1.380649e-23  # J / K
TWO_PI = 2.0 * math.pi

CONSTANTS = {"hbar": HBAR, "k_B": K_B}

# Default operating point, ordinary frequencies in Hz.
DEFAULT_FREQUENCIES_HZ = {
    "omega_a": 10e9,
    "omega_b": 10e9,
    "omega_m": 10e6,
    "gamma_a": 1e6,
    "gamma_b": 1e6,
    "gamma_m": 100.0,
    "g_ga": 3.2e6,
    "g_gb_eff": 3.2e6,
}
DEFAULT_TEMPERATURE = 0.01  # K

# YIG sphere and drive chain.
YIG_SPIN_DENSITY = 4.22e27  # m^-3
GYROMAGNETIC_RATIO = TWO_PI * 28e9  # rad s^-1 T^-1
SPHERE_DIAMETER = 250e-6  # m
DRIVE_FIELD = 3.9e-5  # T
SINGLE_MAGNON_COUPLING = TWO_PI * 0.2  # rad/s

MECHANICAL_Q_WARNING = 100.0
