"""Causal applied-stress waveforms at the upper face.

Every signal is exactly zero for t < 0 and right-continuous at each jump, so
a rectangular pulse of duration t1 is -p_a on [0, t1) and 0 at t = t1.  The
half-sine profile is an extension for smooth-load convergence studies of the
finite-difference cross-check; the impulsive scenarios of record use the
rectangular pulse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AlignmentError, ValidationError
from .materials import Geometry, TimeGrid


@dataclass(frozen=True)
class LoadSignal:
    """Base class; concrete signals implement value() and breakpoints()."""

    #: quadrature rule a solver should use for displacement integrals:
    #: "left" is exact for piecewise-constant signals on an aligned grid,
    #: "trapezoid" is second order for smooth ones.
    quadrature = "left"

    def value(self, t: float) -> float:
        raise NotImplementedError

    def breakpoints(self) -> list[float]:
        raise NotImplementedError

    def describe(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Zero(LoadSignal):
    def value(self, t: float) -> float:
        return 0.0

    def breakpoints(self) -> list[float]:
        return []

    def describe(self) -> dict:
        return {"kind": "zero"}


@dataclass(frozen=True)
class Rectangular(LoadSignal):
    """Compressive pulse -p_a*[H(t) - H(t - t1)], right-continuous."""

    p_a: float  # Pa, amplitude (> 0; the applied stress is -p_a)
    t1: float   # s, pulse duration

    def __post_init__(self):
        _check_shaped(self.p_a, self.t1)

    def value(self, t: float) -> float:
        # Times within float rounding of a jump take the jump-point value, so
        # delayed evaluations computed along different arithmetic paths agree
        # on which side of the discontinuity they see.  The tolerance tracks
        # the ulp scale of the quantities involved, a few dozen epsilons.
        tol = 1e-14 * max(self.t1, abs(t))
        if t >= self.t1 - tol:
            return 0.0
        if t >= -tol:
            return -self.p_a
        return 0.0

    def breakpoints(self) -> list[float]:
        return [0.0, self.t1]

    def describe(self) -> dict:
        return {"kind": "rectangular", "p_a": self.p_a, "t1": self.t1}


@dataclass(frozen=True)
class HalfSine(LoadSignal):
    """-p_a*sin(pi*t/t1) on [0, t1); continuous, with slope breaks at 0, t1."""

    p_a: float
    t1: float

    quadrature = "trapezoid"

    def __post_init__(self):
        _check_shaped(self.p_a, self.t1)

    def value(self, t: float) -> float:
        if 0.0 <= t < self.t1:
            return -self.p_a * math.sin(math.pi * t / self.t1)
        return 0.0

    def breakpoints(self) -> list[float]:
        return [0.0, self.t1]

    def describe(self) -> dict:
        return {"kind": "halfsine", "p_a": self.p_a, "t1": self.t1}


@dataclass(frozen=True)
class Sampled(LoadSignal):
    """Grid-aligned samples, read back as piecewise constant between steps.

    Evaluation is only defined at integer multiples of ``dt``; anything else
    raises, because off-grid reads would silently interpolate.
    """

    values: tuple  # Pa, value on [i*dt, (i+1)*dt)
    dt: float      # s

    def __post_init__(self):
        if self.dt <= 0.0 or not math.isfinite(self.dt):
            raise ValidationError("dt", f"must be > 0, got {self.dt!r}")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    def value(self, t: float) -> float:
        if t < 0.0:
            return 0.0
        ratio = t / self.dt
        idx = round(ratio)
        if abs(ratio - idx) > 1e-9:
            raise AlignmentError(
                "t", f"{t!r} is not a multiple of the sample spacing {self.dt!r}"
            )
        if idx >= len(self.values):
            return 0.0
        return self.values[int(idx)]

    def breakpoints(self) -> list[float]:
        if not self.values:
            return []
        pts = [0.0]
        prev = self.values[0]
        for i, v in enumerate(self.values[1:], start=1):
            if v != prev:
                pts.append(i * self.dt)
            prev = v
        if self.values[-1] != 0.0:
            pts.append(len(self.values) * self.dt)
        return pts

    def describe(self) -> dict:
        return {"kind": "sampled", "n": len(self.values), "dt": self.dt}


def _check_shaped(p_a: float, t1: float) -> None:
    if p_a <= 0.0 or not math.isfinite(p_a):
        raise ValidationError("p_a", f"must be > 0, got {p_a!r}")
    if t1 <= 0.0 or not math.isfinite(t1):
        raise ValidationError("t1", f"must be > 0, got {t1!r}")


def eval_load(sig: LoadSignal, t: float) -> float:
    """Applied stress p(t) at the upper face; 0 for every t < 0."""
    if not math.isfinite(t):
        raise ValidationError("t", f"must be finite, got {t!r}")
    return sig.value(t)


def breakpoints(sig: LoadSignal) -> list[float]:
    """Sorted times where p is discontinuous or non-smooth."""
    return sorted(sig.breakpoints())


def face_pressure_from_force(force: float, geo: Geometry) -> float:
    """Amplitude of the uniformly distributed pressure, p_a = F/A."""
    if force <= 0.0 or not math.isfinite(force):
        raise ValidationError("force", f"must be > 0, got {force!r}")
    return force / geo.face_area


def check_grid_alignment(sig: LoadSignal, grid: TimeGrid) -> None:
    """Reject signals whose breakpoints fall between grid points.

    The exact solver integrates velocities with a rule that is only exact when
    every load discontinuity sits on a grid time.  The error message reports
    the two nearest admissible durations; raising samples_per_transit shrinks
    their spacing.
    """
    for b in breakpoints(sig):
        ratio = b / grid.dt
        if abs(ratio - round(ratio)) > 1e-9 * max(1.0, abs(ratio)):
            lower = math.floor(ratio) * grid.dt
            upper = math.ceil(ratio) * grid.dt
            raise AlignmentError(
                "t1",
                f"breakpoint {b!r} s is not a multiple of dt = {grid.dt!r} s "
                f"(nearest aligned values: {lower!r} or {upper!r}; a larger "
                f"samples_per_transit narrows the gap)",
            )


def sample_load(sig: LoadSignal, times: np.ndarray) -> np.ndarray:
    out = np.fromiter((eval_load(sig, float(t)) for t in times), dtype=float, count=len(times))
    return out
