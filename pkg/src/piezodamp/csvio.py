"""CSV serialization of results.

The time-series schema is a bit-exact contract: fixed header, LF line
endings, shortest round-trip decimal rendering (at most 17 significant
digits).  Identical inputs therefore produce byte-identical files, and
parsing recovers every value exactly.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import ValidationError
from .fields import FieldSnapshot
from .solver import SimulationResult

TIMESERIES_HEADER = "t_s,v0_mps,vh_mps,sigma0_Pa,u0_m,uh_m,voltage_V"
SNAPSHOT_HEADER = "x_m,u_m,v_mps,sigma_Pa,phi_V"


def _fmt(x: float) -> str:
    # repr of a float is the shortest decimal that round-trips exactly
    return repr(float(x))


def render_timeseries(result: SimulationResult) -> str:
    h = result.history
    lines = [TIMESERIES_HEADER]
    for row in zip(result.times, h.v0, h.vh, h.sigma0, h.u0, h.uh, h.voltage):
        lines.append(",".join(_fmt(x) for x in row))
    return "\n".join(lines) + "\n"


def write_timeseries(result: SimulationResult, path: str) -> None:
    _write_text(path, render_timeseries(result))


def read_timeseries(path: str) -> dict[str, np.ndarray]:
    """Parse a time-series CSV back into named arrays."""
    with open(path, "r", newline="") as f:
        lines = f.read().splitlines()
    if not lines or lines[0] != TIMESERIES_HEADER:
        raise ValidationError("csv", f"unexpected header in {path!r}")
    names = TIMESERIES_HEADER.split(",")
    cols = [[] for _ in names]
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != len(names):
            raise ValidationError("csv", f"malformed row in {path!r}: {line!r}")
        for c, p in zip(cols, parts):
            c.append(float(p))
    return {name: np.asarray(col) for name, col in zip(names, cols)}


def render_snapshot(snap: FieldSnapshot) -> str:
    lines = [SNAPSHOT_HEADER]
    for row in zip(snap.positions, snap.u, snap.v, snap.sigma, snap.phi):
        lines.append(",".join(_fmt(x) for x in row))
    return "\n".join(lines) + "\n"


def write_snapshot(snap: FieldSnapshot, path: str) -> None:
    _write_text(path, render_snapshot(snap))


def _write_text(path: str, text: str) -> None:
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", newline="\n") as f:
        f.write(text)
