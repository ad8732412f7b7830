"""Emission dynamics and bound states in the continuum for a two-point-coupled
three-level giant atom in a 1D waveguide, dressed by a single-mode cavity."""

from .dde import (
    InitialCondition,
    IntegrationError,
    Trajectory,
    integrate,
    integrate_point_atom,
    population,
)
from .field import (
    IntensityField,
    SpacetimeGrid,
    beat_period,
    emitted_amplitude,
    intensity_map,
    steady_bic_field,
)
from .model import (
    DerivedRates,
    SubspaceParams,
    SystemParams,
    derive_rates,
    from_rotating_frame,
    subspace_params,
    to_rotating_frame,
)
from .oracle import FullStateHistory, ModeGrid, default_mode_grid, integrate_full, oracle_intensity
from .spectral import (
    BicSolution,
    coexistence_distance,
    design_double_bic,
    find_bics,
    longtime_amplitude,
    oscillation_ratio_check,
)

__version__ = "0.1.0"

__all__ = [
    "SystemParams",
    "DerivedRates",
    "SubspaceParams",
    "derive_rates",
    "subspace_params",
    "to_rotating_frame",
    "from_rotating_frame",
    "InitialCondition",
    "Trajectory",
    "IntegrationError",
    "integrate",
    "integrate_point_atom",
    "population",
    "BicSolution",
    "find_bics",
    "design_double_bic",
    "longtime_amplitude",
    "coexistence_distance",
    "oscillation_ratio_check",
    "SpacetimeGrid",
    "IntensityField",
    "emitted_amplitude",
    "intensity_map",
    "steady_bic_field",
    "beat_period",
    "ModeGrid",
    "FullStateHistory",
    "default_mode_grid",
    "integrate_full",
    "oracle_intensity",
    "__version__",
]
