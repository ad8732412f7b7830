"""Physical parameters, derived rates, and dressed-state quantities.

All quantities are expressed in natural units (hbar = 1); the default
presets additionally fix v = 1 and Gamma = 1, so frequencies are in units
of Gamma and times in units of 1/Gamma.

The emitter is a Lambda-type three-level system whose |e>-|g> transition
couples to a 1D waveguide (linear dispersion w_k = v|k|) at the two points
x = +/- d/2, and whose |e>-|s> transition couples to a single cavity mode
with strength g. The ground-state energy is the zero of energy.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

__all__ = [
    "SystemParams",
    "DerivedRates",
    "SubspaceParams",
    "derive_rates",
    "subspace_params",
    "to_rotating_frame",
    "from_rotating_frame",
]


@dataclass(frozen=True)
class SystemParams:
    """All physical constants of the model.

    Attributes:
        omega_e: Excited-state energy w_e (> 0), measured from w_g = 0.
        omega_s: Metastable-state energy w_s.
        omega_c: Cavity frequency w_c.
        g: Single-photon atom-cavity coupling (real, >= 0).
        j1_mag: |J_1|, waveguide coupling magnitude at x = -d/2... (point 1).
        j2_mag: |J_2|, waveguide coupling magnitude at the other point.
        phi1: Coupling phase phi_1 (rad).
        phi2: Coupling phase phi_2 (rad).
        v: Waveguide group velocity (> 0).
        d: Separation of the two coupling points (> 0).
    """

    omega_e: float
    omega_s: float
    omega_c: float
    g: float
    j1_mag: float
    j2_mag: float
    phi1: float = 0.0
    phi2: float = 0.0
    v: float = 1.0
    d: float = 1.0

    def validate(self) -> None:
        """Raise ValueError if the parameter set is unusable."""
        fields = (
            self.omega_e, self.omega_s, self.omega_c, self.g,
            self.j1_mag, self.j2_mag, self.phi1, self.phi2, self.v, self.d,
        )
        if not all(math.isfinite(x) for x in fields):
            raise ValueError("all system parameters must be finite")
        if self.v <= 0:
            raise ValueError("group velocity v must be positive")
        if self.d <= 0:
            raise ValueError("coupling-point separation d must be positive")
        if self.omega_e <= 0:
            raise ValueError("excited-state frequency omega_e must be positive")
        if self.g < 0:
            raise ValueError("cavity coupling g must be non-negative")
        if self.j1_mag < 0 or self.j2_mag < 0:
            raise ValueError("coupling magnitudes |J_1|, |J_2| must be non-negative")


@dataclass(frozen=True)
class DerivedRates:
    """Rates and scales derived from SystemParams.

    gamma_total is the total decay rate Gamma = 2*pi*(|J_1|^2+|J_2|^2)/v,
    gamma_coll the collective (interference) rate
    gamma = 4*pi*|J_1||J_2|*cos(phi_1-phi_2)/v, with |gamma| <= Gamma always.
    """

    gamma_total: float
    gamma_coll: float
    tau: float
    delta: float
    lambda_e: float
    coherence_length: float


def derive_rates(p: SystemParams) -> DerivedRates:
    """Compute Gamma, gamma, tau, delta, lambda_e, L_c from system parameters."""
    p.validate()
    gamma_total = 2.0 * math.pi * (p.j1_mag**2 + p.j2_mag**2) / p.v
    gamma_coll = 4.0 * math.pi * p.j1_mag * p.j2_mag * math.cos(p.phi1 - p.phi2) / p.v
    # Interference can never beat the sum of the individual rates.
    assert abs(gamma_coll) <= gamma_total * (1.0 + 1e-12)
    tau = p.d / p.v
    delta = p.omega_e - p.omega_s - p.omega_c
    lambda_e = 2.0 * math.pi * p.v / p.omega_e
    coherence_length = p.v / gamma_total if gamma_total > 0 else math.inf
    return DerivedRates(
        gamma_total=gamma_total,
        gamma_coll=gamma_coll,
        tau=tau,
        delta=delta,
        lambda_e=lambda_e,
        coherence_length=coherence_length,
    )


@dataclass(frozen=True)
class SubspaceParams:
    """Dressed-state quantities in the subspace with n cavity photons.

    The total excitation number is N = n + 1. g_n = g*sqrt(n+1) is the
    n-photon Rabi frequency and Delta_n = sqrt(g_n^2 + delta^2/4) half the
    dressed-state splitting. omega_plus/omega_minus are the lab-frame
    dressed energies w_e - delta/2 +/- Delta_n; lambda_plus/lambda_minus
    the corresponding wavelengths 2*pi*v/w.
    """

    n: int
    g_n: float
    delta_n: float
    omega_plus: float
    omega_minus: float
    theta_n: float
    lambda_plus: float
    lambda_minus: float


def subspace_params(p: SystemParams, n: int) -> SubspaceParams:
    """Dressed-state parameters for the subspace with n cavity photons."""
    if n < 0:
        raise ValueError("cavity photon index n must be >= 0")
    rates = derive_rates(p)
    delta = rates.delta
    g_n = p.g * math.sqrt(n + 1.0)
    delta_n = math.sqrt(g_n**2 + 0.25 * delta**2)
    omega_plus = p.omega_e - 0.5 * delta + delta_n
    omega_minus = p.omega_e - 0.5 * delta - delta_n
    if delta_n > 0:
        # Clamp against rounding before asin.
        s = math.sqrt(min(1.0, max(0.0, (2.0 * delta_n - delta) / (4.0 * delta_n))))
        theta_n = math.asin(s)
    else:
        # Degenerate g = delta = 0 point: mixing angle is conventionally pi/4.
        theta_n = 0.25 * math.pi
    two_pi_v = 2.0 * math.pi * p.v
    lambda_plus = two_pi_v / omega_plus if omega_plus != 0 else math.inf
    lambda_minus = two_pi_v / omega_minus if omega_minus != 0 else math.inf
    return SubspaceParams(
        n=n,
        g_n=g_n,
        delta_n=delta_n,
        omega_plus=omega_plus,
        omega_minus=omega_minus,
        theta_n=theta_n,
        lambda_plus=lambda_plus,
        lambda_minus=lambda_minus,
    )


def to_rotating_frame(u_e: complex, u_s: complex, t: float, omega_e: float):
    """Map lab-frame amplitudes (u_e, u_s) to the frame rotating at omega_e.

    Both components are multiplied by exp(+i*omega_e*t).
    """
    ph = cmath.exp(1j * omega_e * t)
    return u_e * ph, u_s * ph


def from_rotating_frame(u_e: complex, u_s: complex, t: float, omega_e: float):
    """Inverse of to_rotating_frame; round-trip is the identity."""
    ph = cmath.exp(-1j * omega_e * t)
    return u_e * ph, u_s * ph
