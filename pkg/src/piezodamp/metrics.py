"""Summary metrics of a voltage series, shared by the sweep and validation.

Peak times are local maxima of the signed voltage separated by at least N/2
samples: the plotted waveform alternates sign every transit during ring-down,
so maxima of |V| would interleave the troughs and halve the apparent spacing.
Peak height is still reported on |V|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import find_peaks

from .solver import SimulationResult


def relative_deviation(a: np.ndarray, b: np.ndarray) -> float:
    """max |a - b| normalized by the largest magnitude of either series."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    scale = max(float(np.max(np.abs(a))), float(np.max(np.abs(b))), 1e-300)
    return float(np.max(np.abs(a - b))) / scale


def peak_times(voltage: np.ndarray, times: np.ndarray, samples_per_transit: int) -> np.ndarray:
    """Times of signed-voltage local maxima, min separation N/2 samples."""
    distance = max(1, samples_per_transit // 2)
    idx, _ = find_peaks(np.asarray(voltage, dtype=float), distance=distance)
    return times[idx]


@dataclass(frozen=True)
class VoltageMetrics:
    peak_abs_voltage: float        # V
    t_peak: float                  # s, first time |V| attains its max
    peak_spacing: float            # s, median gap between detected peaks (nan if < 2)
    post_load_envelope_ratio: float  # max |V| after t1 + 2*theta over global max


def voltage_metrics(result: SimulationResult) -> VoltageMetrics:
    v = result.history.voltage
    t = result.times
    av = np.abs(v)
    i_peak = int(np.argmax(av))
    peak = float(av[i_peak])

    pts = peak_times(v, t, result.grid.samples_per_transit)
    spacing = float(np.median(np.diff(pts))) if len(pts) >= 2 else math.nan

    t1 = getattr(result.load, "t1", None)
    ratio = math.nan
    if t1 is not None and peak > 0.0:
        mask = t > t1 + 2.0 * result.derived.transit_time
        ratio = float(np.max(av[mask])) / peak if mask.any() else 0.0

    return VoltageMetrics(
        peak_abs_voltage=peak,
        t_peak=float(t[i_peak]),
        peak_spacing=spacing,
        post_load_envelope_ratio=ratio,
    )
