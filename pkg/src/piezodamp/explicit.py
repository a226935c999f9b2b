"""Closed-form boundary velocities as nested reflection-operator chains.

Unrolling the recursion once per round trip gives, for 2k*theta <= t <
2(k+1)*theta with P(t) = p(t)/z and W the reflection operator 2Q - I,

    v(h,t) = P(t) + W[ 2P(t-2th) + W[ 2P(t-4th) + ... + W[2P(t-2k th)] ]]
    v(0,t) = Q[ 2P(t-th) + W[ 2P(t-3th) + ... + W[2P(t-(2k-1) th)] ]]

evaluated innermost first.  Each load-duration case truncates the chain: a
pulse shorter than 2m transit times contributes at most m nonzero terms, so
the three supported cases are the depth-1/2/3 instances of the same nesting.
The chains are derived term by term from the recursion, which remains the
authority; the equivalence test against the marching solver enforces that.

This is a genuinely independent evaluation path: a single time t is computed
directly from the load history, with no stored state.
"""

from __future__ import annotations

import enum
import math

from .damper import QAlphaSolver, q_alpha, solver_for, two_q_minus_i
from .errors import UnsupportedCaseError, ValidationError
from .loads import LoadSignal, eval_load
from .materials import DamperSpec


class DurationCase(enum.Enum):
    """Smallest load-duration class; the bound is strict (t1 < 2m*theta)."""

    CASE1 = 1  # t1 < 2*theta
    CASE2 = 2  # t1 < 4*theta
    CASE3 = 3  # t1 < 6*theta
    GENERAL = 0


def classify_case(t1: float, theta: float) -> DurationCase:
    if t1 <= 0.0 or not math.isfinite(t1):
        raise ValidationError("t1", f"must be > 0, got {t1!r}")
    if theta <= 0.0 or not math.isfinite(theta):
        raise ValidationError("theta", f"must be > 0, got {theta!r}")
    for case in (DurationCase.CASE1, DurationCase.CASE2, DurationCase.CASE3):
        if t1 < 2.0 * case.value * theta:
            return case
    return DurationCase.GENERAL


def _check_case(case: DurationCase, load: LoadSignal, theta: float) -> None:
    if case is DurationCase.GENERAL:
        raise UnsupportedCaseError(
            "no closed form for t1 >= 6*theta; use the recursive solver"
        )
    t1 = getattr(load, "t1", None)
    if t1 is not None and not t1 < 2.0 * case.value * theta:
        raise ValidationError(
            "case", f"load duration {t1!r} exceeds the bound of {case.name}"
        )


def _chain(
    t: float,
    first_delay: float,
    k: int,
    load: LoadSignal,
    z: float,
    theta: float,
    solver: QAlphaSolver,
) -> float:
    """Innermost-first evaluation of 2P(t-d) + W[2P(t-d-2th) + W[...]].

    ``first_delay`` is the outermost delay (2*theta for the top face, theta
    for the bottom face); ``k`` is the number of chain terms.
    """
    acc = 0.0
    for j in range(k, 0, -1):
        delay = first_delay + 2.0 * theta * (j - 1)
        term = 2.0 * eval_load(load, t - delay) / z
        if j == k:
            acc = term
        else:
            acc = term + two_q_minus_i(acc, solver)
    return acc


def _window_index(ratio: float) -> int:
    """floor(ratio), snapped right-continuously when ratio sits on an integer.

    Grid times land exactly on window boundaries up to float rounding; the
    snap makes sure the branch containing t is chosen, matching the
    right-continuity convention of the loads.
    """
    near = round(ratio)
    if abs(ratio - near) <= 1e-9 * max(1.0, abs(ratio)):
        return int(near)
    return int(math.floor(ratio))


def explicit_vh(
    case: DurationCase,
    t: float,
    load: LoadSignal,
    damper: DamperSpec,
    z: float,
    theta: float,
    *,
    solver: QAlphaSolver | None = None,
) -> float:
    """Top-face velocity v(h, t) from the closed-form chain."""
    _check_case(case, load, theta)
    if solver is None:
        solver = solver_for(damper)
    if t < 0.0:
        return 0.0
    # window 2k*theta <= t < 2(k+1)*theta
    k = max(0, _window_index(t / (2.0 * theta)))
    out = eval_load(load, t) / z
    if k >= 1:
        out += two_q_minus_i(_chain(t, 2.0 * theta, k, load, z, theta, solver), solver)
    return out


def explicit_v0(
    case: DurationCase,
    t: float,
    load: LoadSignal,
    damper: DamperSpec,
    z: float,
    theta: float,
    *,
    solver: QAlphaSolver | None = None,
) -> float:
    """Bottom-face velocity v(0, t); identically zero until the wave arrives."""
    _check_case(case, load, theta)
    if solver is None:
        solver = solver_for(damper)
    if t < 0.0:
        return 0.0
    # window (2k-1)*theta <= t < (2k+1)*theta; k = 0 collapses to zero output
    k = max(0, _window_index((t - theta) / (2.0 * theta)) + 1)
    if k == 0:
        return 0.0
    return q_alpha(_chain(t, theta, k, load, z, theta, solver), solver)
