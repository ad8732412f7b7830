"""Strict readers for the simulation CSV artifacts.

Two documented formats are consumed: trajectory files with header
`t,re_ue,im_ue,re_us,im_us,p_e` and field maps with header `x,t,intensity`
(row-major in t, then x). A header mismatch is a hard error, never a guess.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

TRAJECTORY_HEADER = ["t", "re_ue", "im_ue", "re_us", "im_us", "p_e"]
FIELD_HEADER = ["x", "t", "intensity"]


class HeaderMismatch(ValueError):
    """Input CSV does not carry one of the documented headers."""


@dataclass
class TrajectoryData:
    """Columns of one trajectory CSV; arrays may be empty."""

    path: Path
    t: np.ndarray
    columns: dict


@dataclass
class FieldData:
    """A field map reshaped to (nt, nx) with its axis vectors."""

    path: Path
    x: np.ndarray
    t: np.ndarray
    intensity: np.ndarray


def _read_rows(path) -> tuple[list, list]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise HeaderMismatch("%s: empty file, expected a CSV header" % path) from None
        rows = [row for row in reader if row]
    return header, rows


def read_trajectory(path) -> TrajectoryData:
    header, rows = _read_rows(path)
    if header != TRAJECTORY_HEADER:
        raise HeaderMismatch(
            "%s: header %r does not match trajectory format %r"
            % (path, ",".join(header), ",".join(TRAJECTORY_HEADER))
        )
    data = np.array(rows, dtype=float) if rows else np.zeros((0, len(header)))
    columns = {name: data[:, i] for i, name in enumerate(header)}
    return TrajectoryData(path=Path(path), t=columns["t"], columns=columns)


def read_field(path) -> FieldData:
    header, rows = _read_rows(path)
    if header != FIELD_HEADER:
        raise HeaderMismatch(
            "%s: header %r does not match field format %r"
            % (path, ",".join(header), ",".join(FIELD_HEADER))
        )
    data = np.array(rows, dtype=float) if rows else np.zeros((0, 3))
    if len(data) == 0:
        return FieldData(path=Path(path), x=np.zeros(0), t=np.zeros(0),
                         intensity=np.zeros((0, 0)))
    xs = np.unique(data[:, 0])
    ts = np.unique(data[:, 1])
    if len(xs) * len(ts) != len(data):
        raise ValueError("%s: rows do not form a complete x-t grid" % path)
    intensity = data[:, 2].reshape(len(ts), len(xs))
    return FieldData(path=Path(path), x=xs, t=ts, intensity=intensity)


def read_grid_meta(path) -> dict:
    """Grid metadata sidecar emitted next to field CSVs."""
    with open(path) as fh:
        doc = json.load(fh)
    if "grid" not in doc:
        raise ValueError("%s: metadata sidecar lacks a 'grid' entry" % path)
    return doc
