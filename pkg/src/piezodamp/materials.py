"""Physical inputs and every constant derived from them.

All quantities are SI base units internally (Pa, m, s, kg, F/m).  The damper
coefficient gamma = k_alpha / (rho c A) carries fractional units
(m/s)^(1-alpha) for non-integer alpha; it is treated as a plain number with
velocities expressed in m/s, which is consistent as long as everything stays
in SI.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError


def _require_positive(field: str, value: float, allow_zero: bool = False) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValidationError(field, f"must be finite, got {value!r}")
    if allow_zero:
        if value < 0.0:
            raise ValidationError(field, f"must be >= 0, got {value!r}")
    elif value <= 0.0:
        raise ValidationError(field, f"must be > 0, got {value!r}")
    return value


@dataclass(frozen=True)
class MaterialProperties:
    """Effective 1-D constitutive constants of the piezoelectric layer."""

    stiffness: float     # C, Pa
    piezo: float         # e, N/(V m)
    permittivity: float  # eps, F/m
    density: float       # rho, kg/m^3

    def __post_init__(self):
        _require_positive("stiffness", self.stiffness)
        # piezo = 0 is admitted as the decoupled elastic limit; it is what the
        # d'Alembert cross-checks run with.
        _require_positive("piezo", self.piezo, allow_zero=True)
        _require_positive("permittivity", self.permittivity)
        _require_positive("density", self.density)


#: PZT-5A constants used throughout the bundled example scenarios.
PZT_5A = MaterialProperties(
    stiffness=5.32e10,
    piezo=19.89,
    permittivity=76.12e-10,
    density=7750.0,
)


@dataclass(frozen=True)
class Geometry:
    """Layer thickness and end-face area of the cylinder or disk."""

    thickness: float  # h, m
    face_area: float  # A, m^2

    def __post_init__(self):
        _require_positive("thickness", self.thickness)
        _require_positive("face_area", self.face_area)

    @classmethod
    def from_diameter(cls, thickness: float, diameter: float) -> "Geometry":
        d = _require_positive("diameter", diameter)
        return cls(thickness=thickness, face_area=math.pi * d * d / 4.0)


@dataclass(frozen=True)
class DerivedConstants:
    """Wave-propagation constants computed once from material and geometry."""

    stiffened_modulus: float  # C + e^2/eps, Pa
    wave_speed: float         # c, m/s
    impedance: float          # z = rho*c, Pa s/m
    transit_time: float       # theta = h/c, s


def derive_constants(mat: MaterialProperties, geo: Geometry) -> DerivedConstants:
    """Compute the stiffened modulus, wave speed, impedance and transit time.

    The electromechanical coupling stiffens the layer: the wave speed is
    sqrt((C + e^2/eps)/rho), strictly above the bare elastic value whenever
    the coupling constant is nonzero.
    """
    c_d = mat.stiffness + mat.piezo**2 / mat.permittivity
    c = math.sqrt(c_d / mat.density)
    return DerivedConstants(
        stiffened_modulus=c_d,
        wave_speed=c,
        impedance=mat.density * c,
        transit_time=geo.thickness / c,
    )


@dataclass(frozen=True)
class DamperSpec:
    """Power-law damper: force magnitude k_alpha * |v|^alpha opposing v."""

    alpha: float    # damping exponent, dimensionless
    k_alpha: float  # damping constant, N (s/m)^alpha
    gamma: float    # k_alpha/(rho c A), fractional units, see module docstring


def derive_damper(
    k_alpha: float,
    alpha: float,
    derived: DerivedConstants,
    geo: Geometry,
) -> DamperSpec:
    """Build a DamperSpec with gamma = k_alpha / (impedance * face_area)."""
    alpha = _require_positive("alpha", alpha)
    k_alpha = _require_positive("k_alpha", k_alpha, allow_zero=True)
    gamma = k_alpha / (derived.impedance * geo.face_area)
    return DamperSpec(alpha=alpha, k_alpha=k_alpha, gamma=gamma)


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid with dt = theta/N so every delayed read is an index shift.

    Aligning dt to the transit time is mandatory: the recursion evaluates
    boundary values at t - theta and t - 2*theta, and those must land on grid
    points exactly or the method stops being exact.
    """

    samples_per_transit: int  # N
    dt: float                 # theta/N, s
    step_count: int           # M; grid times are i*dt for i = 0..M

    @property
    def times(self) -> np.ndarray:
        t = np.arange(self.step_count + 1, dtype=float) * self.dt
        t.flags.writeable = False
        return t

    @property
    def t_end(self) -> float:
        return self.step_count * self.dt

    def snap_duration(self, duration: float) -> float:
        """Nearest grid-aligned duration (at least one step)."""
        if duration <= 0.0:
            raise ValidationError("duration", f"must be > 0, got {duration!r}")
        return max(1, round(duration / self.dt)) * self.dt


def make_grid(theta: float, samples_per_transit: int, t_end: float) -> TimeGrid:
    """Grid covering [0, t_end] with dt = theta/samples_per_transit.

    step_count is the smallest M with M*dt >= t_end (up to a 1e-9 relative
    slack so that t_end given as an exact multiple of dt does not gain a step
    from float rounding).
    """
    theta = _require_positive("theta", theta)
    t_end = _require_positive("t_end", t_end)
    if not isinstance(samples_per_transit, (int, np.integer)):
        raise ValidationError("samples_per_transit", "must be an integer")
    if samples_per_transit < 1:
        raise ValidationError(
            "samples_per_transit", f"must be >= 1, got {samples_per_transit}"
        )
    n = int(samples_per_transit)
    dt = theta / n
    ratio = t_end / dt
    m = max(1, math.ceil(ratio * (1.0 - 1e-9)))
    return TimeGrid(samples_per_transit=n, dt=dt, step_count=m)
