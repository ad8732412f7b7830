"""Figure rendering for simulation CSV/JSON artifacts.

A strictly read-only consumer: it parses the documented trajectory and
field-map CSV formats and draws them; no physics is recomputed.
"""

from .io import FieldData, HeaderMismatch, TrajectoryData, read_field, read_grid_meta, read_trajectory
from .render import colormap_values, render
from .spec import PlotSpec, load_spec

__version__ = "0.1.0"

__all__ = [
    "PlotSpec",
    "load_spec",
    "render",
    "colormap_values",
    "read_trajectory",
    "read_field",
    "read_grid_meta",
    "TrajectoryData",
    "FieldData",
    "HeaderMismatch",
    "__version__",
]
