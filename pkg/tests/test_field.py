"""Spacetime field reconstruction: causality, nodes, and beat structure."""

import math

import numpy as np
import pytest

from conftest import INIT_E, P_DOUBLE_BIC, P_SINGLE_BIC, PI, symmetric_params
from giantatom import (
    InitialCondition,
    SpacetimeGrid,
    SystemParams,
    beat_period,
    emitted_amplitude,
    find_bics,
    integrate,
    intensity_map,
    steady_bic_field,
    subspace_params,
)
from giantatom.field import FIELD_CSV_HEADER, write_field_csv


@pytest.fixture(scope="module")
def double_bic_traj():
    return integrate(P_DOUBLE_BIC, 0, INIT_E, 12.0)


def test_causality_exact_zero(double_bic_traj):
    p = P_DOUBLE_BIC
    for x, t in ((2.0, 1.0), (-3.0, 2.4), (0.0, 0.4), (1.5, 0.99)):
        front = min(abs(x / p.v - 0.5), abs(x / p.v + 0.5))
        assert t < front
        assert emitted_amplitude(double_bic_traj, p, x, t) == 0j


def test_center_symmetric_superposition(double_bic_traj):
    p = P_DOUBLE_BIC
    t = 4.0
    amp = emitted_amplitude(double_bic_traj, p, 0.0, t)
    u = double_bic_traj.lab_amplitude(t - 0.5)
    assert amp == pytest.approx(-2j * math.sqrt(1.0 / 8.0) * complex(u), rel=1e-12)


def test_asymmetric_coupling_rejected(double_bic_traj):
    bad_mag = SystemParams(omega_e=202 * PI, omega_s=0.0, omega_c=202 * PI,
                           g=PI, j1_mag=0.3, j2_mag=0.2)
    with pytest.raises(ValueError):
        emitted_amplitude(double_bic_traj, bad_mag, 0.0, 2.0)
    bad_phase = SystemParams(omega_e=202 * PI, omega_s=0.0, omega_c=202 * PI,
                             g=PI, j1_mag=0.3, j2_mag=0.3, phi2=0.5 * PI)
    with pytest.raises(ValueError):
        emitted_amplitude(double_bic_traj, bad_phase, 0.0, 2.0)


def test_horizon_guard(double_bic_traj):
    with pytest.raises(ValueError):
        emitted_amplitude(double_bic_traj, P_DOUBLE_BIC, 0.0, 20.0)


def test_intensity_map_zero_trajectory():
    traj = integrate(P_DOUBLE_BIC, 0, InitialCondition(u_e0=0j, u_s0=0j), 3.0)
    grid = SpacetimeGrid(x_min=-2.0, x_max=2.0, nx=11, t_min=0.0, t_max=3.0, nt=7)
    fld = intensity_map(traj, P_DOUBLE_BIC, grid)
    assert np.all(fld.values == 0.0)


def test_intensity_map_causality_and_sign(double_bic_traj):
    grid = SpacetimeGrid(x_min=-3.0, x_max=3.0, nx=61, t_min=0.0, t_max=5.0, nt=51)
    fld = intensity_map(double_bic_traj, P_DOUBLE_BIC, grid)
    assert np.all(fld.values >= 0.0)
    xs, ts = grid.xs, grid.ts
    front = np.minimum(np.abs(xs - 0.5), np.abs(xs + 0.5))
    outside = ts[:, None] < front[None, :]
    assert np.all(fld.values[outside] == 0.0)
    assert fld.values[~outside].max() > 0.0


def test_steady_field_nodes_and_antinode():
    sols = find_bics(P_DOUBLE_BIC, 0)
    branches = [s.branch for s in sols]
    residues = [s.residue_e for s in sols]
    # Outside the interval and at x = +d/2 (sine argument exactly 0) the
    # field vanishes identically; at x = -d/2 it vanishes to rounding in pi.
    for x in (0.5, 0.8, -2.0):
        assert steady_bic_field(P_DOUBLE_BIC, 0, branches, residues, x, 1.3) == 0j
    assert abs(steady_bic_field(P_DOUBLE_BIC, 0, branches, residues, -0.5, 1.3)) < 1e-10
    # Antinode at the center: both |sin| factors are 1 there. The two
    # branches beat in time, so probe at t = 0.5 where they add.
    sub = subspace_params(P_DOUBLE_BIC, 0)
    assert abs(math.sin(sub.omega_plus * 0.5)) == pytest.approx(1.0, abs=1e-10)
    amp0 = steady_bic_field(P_DOUBLE_BIC, 0, branches, residues, 0.0, 0.5)
    assert abs(amp0) == pytest.approx(0.8 / math.sqrt(2.0), rel=1e-9)


def test_beat_period():
    sub = subspace_params(P_DOUBLE_BIC, 0)
    assert beat_period(sub) == pytest.approx(1.0, rel=1e-12)
    sub2 = subspace_params(symmetric_params(202 * PI, 2 * PI), 0)
    assert beat_period(sub2) == pytest.approx(0.5, rel=1e-12)
    sub8 = subspace_params(symmetric_params(202 * PI, PI), 8)
    assert beat_period(sub8) == pytest.approx(1.0 / 3.0, rel=1e-12)
    flat = subspace_params(symmetric_params(202 * PI, 0.0), 0)
    with pytest.raises(ValueError):
        beat_period(flat)


def test_interior_time_average_translation_invariant():
    traj = integrate(P_DOUBLE_BIC, 0, INIT_E, 47.0)
    x = 0.2
    period = beat_period(subspace_params(P_DOUBLE_BIC, 0))
    samples = np.linspace(0.0, period, 101)[:-1]
    avg_a = np.mean(
        [abs(emitted_amplitude(traj, P_DOUBLE_BIC, x, 44.0 + s)) ** 2 for s in samples]
    )
    avg_b = np.mean(
        [abs(emitted_amplitude(traj, P_DOUBLE_BIC, x, 45.5 + s)) ** 2 for s in samples]
    )
    assert abs(avg_a - avg_b) < 0.01 * avg_a


def test_field_csv_format(tmp_path):
    traj = integrate(P_SINGLE_BIC, 0, INIT_E, 2.0)
    grid = SpacetimeGrid(x_min=-1.0, x_max=1.0, nx=5, t_min=0.0, t_max=2.0, nt=3)
    fld = intensity_map(traj, P_SINGLE_BIC, grid)
    path = tmp_path / "field.csv"
    write_field_csv(fld, path)
    lines = path.read_text().splitlines()
    assert lines[0] == FIELD_CSV_HEADER
    assert len(lines) == 1 + 5 * 3
    first = [float(v) for v in lines[1].split(",")]
    assert first[:2] == [-1.0, 0.0]
