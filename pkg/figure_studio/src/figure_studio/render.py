"""Rendering backends for the three plot kinds.

The renderer performs no numerics beyond axis transforms: every pixel value
derives from the input CSV values through a fixed monotone colormap (see
colormap_values). Output is a PNG written with fixed metadata so identical
inputs produce identical images.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np
from matplotlib import colormaps, colors

from .io import read_field, read_grid_meta, read_trajectory
from .spec import PlotSpec

CMAP = "viridis"
DPI = 150
PNG_METADATA = {"Software": "figure-studio"}


def colormap_values(values: np.ndarray, vmin: float, vmax: float) -> np.ndarray:
    """RGBA colors the heatmap assigns to `values`; exposed for testing.

    The normalization is linear and the colormap perceptually monotone, so
    ordering of input values is preserved in luminance.
    """
    norm = colors.Normalize(vmin=vmin, vmax=vmax)
    return colormaps[CMAP](norm(np.asarray(values, dtype=float)))


def _finish(fig, ax, spec: PlotSpec) -> str:
    if spec.title:
        ax.set_title(spec.title)
    if spec.x_label:
        ax.set_xlabel(spec.x_label)
    if spec.y_label:
        ax.set_ylabel(spec.y_label)
    ax.set_xscale(spec.x_scale)
    ax.set_yscale(spec.y_scale)
    fig.savefig(spec.output, dpi=DPI, metadata=PNG_METADATA)
    plt.close(fig)
    return spec.output


def _render_lines(spec: PlotSpec):
    fig, ax = plt.subplots(figsize=(6.0, 4.0), constrained_layout=True)
    any_data = False
    for i, path in enumerate(spec.inputs):
        data = read_trajectory(path)
        if spec.column not in data.columns:
            raise ValueError("%s: no column %r in trajectory CSV" % (path, spec.column))
        label = spec.labels[i] if spec.labels else Path(path).stem
        if len(data.t):
            any_data = True
            ax.plot(data.t, data.columns[spec.column], label=label)
    if any_data and (spec.labels or len(spec.inputs) > 1):
        ax.legend(frameon=False)
    return _finish(fig, ax, spec)


def _render_heatmap(spec: PlotSpec):
    data = read_field(spec.inputs[0])
    fig, ax = plt.subplots(figsize=(6.0, 4.5), constrained_layout=True)
    if data.intensity.size:
        if spec.meta:
            grid = read_grid_meta(spec.meta)["grid"]
            extent = (grid["x_min"], grid["x_max"], grid["t_min"], grid["t_max"])
        else:
            extent = (data.x[0], data.x[-1], data.t[0], data.t[-1])
        vmax = float(data.intensity.max())
        ax.imshow(
            data.intensity,
            origin="lower",
            aspect="auto",
            extent=extent,
            cmap=CMAP,
            vmin=0.0,
            vmax=vmax if vmax > 0 else 1.0,
            interpolation="nearest",
        )
    return _finish(fig, ax, spec)


def _render_cuts(spec: PlotSpec):
    data = read_field(spec.inputs[0])
    fig, ax = plt.subplots(figsize=(6.0, 4.0), constrained_layout=True)
    if data.intensity.size:
        for t_want in spec.cut_times:
            j = int(np.argmin(np.abs(data.t - t_want)))
            ax.plot(data.x, data.intensity[j], label="t = %g" % data.t[j])
        ax.legend(frameon=False)
    return _finish(fig, ax, spec)


def render(spec: PlotSpec) -> str:
    """Render the figure described by spec; returns the output path."""
    spec.validate()
    if spec.kind == "lines":
        return _render_lines(spec)
    if spec.kind == "heatmap":
        return _render_heatmap(spec)
    return _render_cuts(spec)
