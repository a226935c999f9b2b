"""Exact time-domain dynamics of a piezoelectric layer on a power-law damper.

The solver marches two delay recursions for the boundary velocities on a grid
aligned to the wave transit time, which makes every value exact at grid
points; closed-form operator chains, interior field reconstruction and an
independent finite-difference scheme cross-validate it.
"""

from .damper import (
    QAlphaSolver,
    damper_residual,
    make_solver,
    q_alpha,
    solver_for,
    two_q_minus_i,
    two_q_minus_i_pow,
)
from .errors import (
    AlignmentError,
    ConvergenceError,
    PiezoDampError,
    UnsupportedCaseError,
    ValidationError,
)
from .explicit import DurationCase, classify_case, explicit_v0, explicit_vh
from .fd import ConvergenceRow, FdConfig, convergence_study, energy_ledger, run_fd
from .fields import (
    FieldSnapshot,
    displacement_at,
    potential_at,
    snapshot,
    stress_at,
    velocity_at,
)
from .loads import (
    HalfSine,
    LoadSignal,
    Rectangular,
    Sampled,
    Zero,
    breakpoints,
    check_grid_alignment,
    eval_load,
    face_pressure_from_force,
)
from .materials import (
    PZT_5A,
    DamperSpec,
    DerivedConstants,
    Geometry,
    MaterialProperties,
    TimeGrid,
    derive_constants,
    derive_damper,
    make_grid,
)
from .solver import (
    BoundaryHistory,
    SimulationResult,
    cumulative_integral,
    dissipated_energy,
    run_recursive,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentError",
    "BoundaryHistory",
    "ConvergenceError",
    "ConvergenceRow",
    "DamperSpec",
    "DerivedConstants",
    "DurationCase",
    "FdConfig",
    "FieldSnapshot",
    "Geometry",
    "HalfSine",
    "LoadSignal",
    "MaterialProperties",
    "PZT_5A",
    "PiezoDampError",
    "QAlphaSolver",
    "Rectangular",
    "Sampled",
    "SimulationResult",
    "TimeGrid",
    "UnsupportedCaseError",
    "ValidationError",
    "Zero",
    "breakpoints",
    "check_grid_alignment",
    "classify_case",
    "convergence_study",
    "cumulative_integral",
    "damper_residual",
    "derive_constants",
    "derive_damper",
    "displacement_at",
    "dissipated_energy",
    "energy_ledger",
    "eval_load",
    "explicit_v0",
    "explicit_vh",
    "face_pressure_from_force",
    "make_grid",
    "make_solver",
    "potential_at",
    "q_alpha",
    "run_fd",
    "run_recursive",
    "snapshot",
    "solver_for",
    "stress_at",
    "two_q_minus_i",
    "two_q_minus_i_pow",
    "velocity_at",
]
