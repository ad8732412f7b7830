"""Shared parameter sets used across the test modules.

The frequently used configurations fix natural units v = 1, d = 1 and a
total decay rate Gamma = 1; omega_e is always a multiple of pi so the
delay-phase conditions can be dialed on and off exactly.
"""

import math

from giantatom import InitialCondition, SystemParams

PI = math.pi

# |J_1| = |J_2| = sqrt(1/4pi): Gamma = gamma = 1 (v = 1).
J_SYM = math.sqrt(1.0 / (4.0 * PI))
# Single coupling point with Gamma = 1, gamma = 0.
J_SINGLE = math.sqrt(1.0 / (2.0 * PI))


def symmetric_params(omega_e: float, g: float, **kw) -> SystemParams:
    """Gamma = gamma = 1, resonant cavity (delta = 0)."""
    return SystemParams(
        omega_e=omega_e, omega_s=0.0, omega_c=omega_e, g=g,
        j1_mag=J_SYM, j2_mag=J_SYM, **kw,
    )


def single_point_params(omega_e: float, g: float = 0.0) -> SystemParams:
    """Gamma = 1, gamma = 0 (second coupling point removed)."""
    return SystemParams(
        omega_e=omega_e, omega_s=0.0, omega_c=omega_e, g=g,
        j1_mag=J_SINGLE, j2_mag=0.0,
    )


# The standard scenarios exercised throughout the suite.
P_EXP = single_point_params(202 * PI)                 # plain exponential decay
P_RABI = symmetric_params(202 * PI, 1.0)              # pre-delay damped Rabi
P_2GA_BIC = symmetric_params(201 * PI, 0.0)           # g = 0 plateau
P_2GA_OFF = symmetric_params(201.5 * PI, 0.0)         # phase condition broken
P_DOUBLE_BIC = symmetric_params(202 * PI, PI)         # two poles, q = 101/100
P_SINGLE_BIC = symmetric_params(202.5 * PI, 0.5 * PI)  # only the + branch survives

INIT_E = InitialCondition()
