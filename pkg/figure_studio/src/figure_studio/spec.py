"""Plot specification: what to draw, from which artifacts, into which file."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

KINDS = ("lines", "heatmap", "cuts")


@dataclass
class PlotSpec:
    """One figure to render.

    kind "lines" plots a trajectory column against time for every input CSV;
    "heatmap" renders a single field CSV as an x-t intensity image;
    "cuts" plots intensity against x at selected times of a field CSV.
    """

    kind: str
    inputs: list
    output: str
    labels: list = field(default_factory=list)
    column: str = "p_e"
    cut_times: list = field(default_factory=list)
    meta: str | None = None
    title: str = ""
    x_label: str = ""
    y_label: str = ""
    x_scale: str = "linear"
    y_scale: str = "linear"

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise ValueError("kind must be one of %s, got %r" % (", ".join(KINDS), self.kind))
        if not self.inputs:
            raise ValueError("at least one input CSV is required")
        if self.kind in ("heatmap", "cuts") and len(self.inputs) != 1:
            raise ValueError("kind %r takes exactly one input CSV" % self.kind)
        if self.kind == "cuts" and not self.cut_times:
            raise ValueError("kind 'cuts' requires cut_times")
        if self.labels and len(self.labels) != len(self.inputs):
            raise ValueError("labels must match inputs one to one")
        for scale in (self.x_scale, self.y_scale):
            if scale not in ("linear", "log"):
                raise ValueError("axis scale must be 'linear' or 'log'")
        for path in self.inputs:
            if not Path(path).is_file():
                raise ValueError("input does not exist: %s" % path)
        if not self.output:
            raise ValueError("output image path is required")


def load_spec(path) -> PlotSpec:
    with open(path) as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError("%s: plot spec must be a JSON object" % path)
    known = {f for f in PlotSpec.__dataclass_fields__}
    unknown = set(doc) - known
    if unknown:
        raise ValueError("%s: unknown spec keys %s" % (path, sorted(unknown)))
    spec = PlotSpec(**doc)
    spec.validate()
    return spec
