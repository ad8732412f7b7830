"""Emitted-field amplitude and intensity in spacetime.

The waveguide amplitude at position x and time t is a retarded superposition
of the emitter amplitude evaluated at the two travel times from the coupling
points at x = +/- d/2:

    Psi_n(x,t) = -i sqrt(Gamma/8v) [ e^{i phi1} u_ne(t - |x/v - tau/2|)
                                   + e^{i phi2} u_ne(t - |x/v + tau/2|) ]

with each term switched on only inside its light cone. The closed-form
steady field of an emergent bound state is a standing sine between the
coupling points with nodes at x = +/- d/2.

The retarded formula is valid for |J_1| = |J_2| and phi_1 - phi_2 = q*pi;
this restriction is enforced, not silently generalized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dde import Trajectory
from .model import SystemParams, derive_rates, subspace_params

__all__ = [
    "SpacetimeGrid",
    "IntensityField",
    "emitted_amplitude",
    "intensity_map",
    "steady_bic_field",
    "beat_period",
]

FIELD_CSV_HEADER = "x,t,intensity"


@dataclass(frozen=True)
class SpacetimeGrid:
    """Rectangular sampling grid for field maps."""

    x_min: float
    x_max: float
    nx: int
    t_min: float
    t_max: float
    nt: int

    def validate(self) -> None:
        if not self.x_min < self.x_max:
            raise ValueError("need x_min < x_max")
        if not self.t_min <= self.t_max:
            raise ValueError("need t_min <= t_max")
        if self.nx < 2 or self.nt < 2:
            raise ValueError("need nx >= 2 and nt >= 2")

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    @property
    def ts(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.nt)


@dataclass
class IntensityField:
    """Intensity samples I_n(x_i, t_j); values has shape (nt, nx)."""

    grid: SpacetimeGrid
    values: np.ndarray


def default_grid(p: SystemParams, t_max: float) -> SpacetimeGrid:
    """Figure-preset grid: x in [-3d, 3d], t in [0, t_max]."""
    return SpacetimeGrid(
        x_min=-3.0 * p.d, x_max=3.0 * p.d, nx=601, t_min=0.0, t_max=t_max, nt=1001
    )


def _check_symmetric_coupling(p: SystemParams) -> None:
    scale = max(p.j1_mag, p.j2_mag, 1e-300)
    if abs(p.j1_mag - p.j2_mag) > 1e-9 * scale:
        raise ValueError("field reconstruction requires |J_1| = |J_2|")
    rel = (p.phi1 - p.phi2) / math.pi
    if abs(rel - round(rel)) > 1e-9:
        raise ValueError("field reconstruction requires phi_1 - phi_2 = q*pi")


def _amplitude_at(traj: Trajectory, p: SystemParams, xs: np.ndarray, t: float) -> np.ndarray:
    rates = derive_rates(p)
    tau = rates.tau
    pref = -1j * math.sqrt(rates.gamma_total / (8.0 * p.v))
    out = np.zeros(len(xs), dtype=complex)
    for phi, sign in ((p.phi1, -1.0), (p.phi2, +1.0)):
        t_ret = t - np.abs(xs / p.v + sign * 0.5 * tau)
        mask = t_ret >= 0.0
        if np.any(mask):
            vals = traj.lab_amplitude(t_ret[mask])
            out[mask] += pref * np.exp(1j * phi) * vals
    return out


def emitted_amplitude(traj: Trajectory, p: SystemParams, x: float, t: float) -> complex:
    """Psi_n(x, t) from the stored trajectory; zero outside the light cone."""
    _check_symmetric_coupling(p)
    if t > traj.t_max * (1 + 1e-12):
        raise ValueError("evaluation time beyond the stored trajectory horizon")
    return complex(_amplitude_at(traj, p, np.array([x], dtype=float), t)[0])


def intensity_map(traj: Trajectory, p: SystemParams, grid: SpacetimeGrid) -> IntensityField:
    """Sample I_n(x, t) = |Psi_n(x, t)|^2 on the grid."""
    _check_symmetric_coupling(p)
    grid.validate()
    if grid.t_max > traj.t_max * (1 + 1e-12):
        raise ValueError("grid extends beyond the stored trajectory horizon")
    xs = grid.xs
    values = np.empty((grid.nt, grid.nx), dtype=float)
    for j, t in enumerate(grid.ts):
        amp = _amplitude_at(traj, p, xs, float(t))
        values[j] = np.abs(amp) ** 2
    return IntensityField(grid=grid, values=values)


def steady_bic_field(
    p: SystemParams,
    n: int,
    branches,
    residues,
    x,
    t: float,
):
    """Closed-form field of the emergent bound states at time t.

    branches is a sequence of '+'/'-' labels and residues the matching
    long-time U_ne coefficients (see spectral.find_bics). Inside
    [-d/2, d/2] each branch contributes a standing sine at its lab-frame
    dressed frequency; outside the interval the steady field vanishes.
    """
    sub = subspace_params(p, n)
    rates = derive_rates(p)
    x_arr = np.asarray(x, dtype=float)
    scalar = x_arr.ndim == 0
    x_arr = np.atleast_1d(x_arr)
    out = np.zeros(len(x_arr), dtype=complex)
    inside = np.abs(x_arr) <= 0.5 * p.d + 1e-15
    pref = math.sqrt(rates.gamma_total / (2.0 * p.v)) * np.exp(1j * p.phi1)
    for branch, res in zip(branches, residues):
        if branch == "+":
            omega = sub.omega_plus
        elif branch == "-":
            omega = sub.omega_minus
        else:
            raise ValueError("branch must be '+' or '-'")
        if sub.g_n == 0:
            omega = p.omega_e
        phase = complex(math.cos(omega * t), -math.sin(omega * t))
        out[inside] += (
            pref
            * res
            * phase
            * np.sin(omega * (p.d - 2.0 * x_arr[inside]) / (2.0 * p.v))
        )
    return complex(out[0]) if scalar else out


def beat_period(sub) -> float:
    """Beat period of a two-bound-state superposition: pi/Delta_n."""
    if sub.delta_n <= 0:
        raise ValueError("beat period undefined at Delta_n = 0")
    return math.pi / sub.delta_n


def write_field_csv(field: IntensityField, path) -> None:
    """Write the intensity map as CSV (rows ordered by t, then x)."""
    xs = field.grid.xs
    ts = field.grid.ts
    with open(path, "w", newline="") as fh:
        fh.write(FIELD_CSV_HEADER + "\n")
        for j, t in enumerate(ts):
            row = field.values[j]
            for i, x in enumerate(xs):
                fh.write("%s,%s,%s\n" % (repr(float(x)), repr(float(t)), repr(float(row[i]))))
