"""The damper response f(xi) = xi + gamma*|xi|^alpha*sgn(xi) and its inverse.

f is continuous and strictly increasing on the whole real line for any
alpha > 0 and gamma >= 0, so the inverse is single valued and total.  The
inverse is what the recursive solver applies once per time step to turn the
known boundary combination r into the bottom-face velocity.

Closed forms exist for alpha in {2, 1, 1/2, 1/3}; every other exponent goes
through a safeguarded Newton iteration on a bracketing interval.  The closed
forms are rationalized where the direct quadratic-formula expression would
cancel catastrophically for small |r|*gamma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, ValidationError
from .materials import DamperSpec

_MODE_BY_ALPHA = {
    2.0: "closed-form-2",
    1.0: "closed-form-1",
    0.5: "closed-form-half",
    1.0 / 3.0: "closed-form-third",
}

_VALID_MODES = frozenset(_MODE_BY_ALPHA.values()) | {"general-rootfind"}


@dataclass(frozen=True)
class QAlphaSolver:
    """Configured inverse operator for one (alpha, gamma) pair.

    ``mode`` selects a closed form when alpha matches one of {2, 1, 1/2, 1/3}
    bit-exactly, otherwise the general root-finder.  Construct through
    :func:`make_solver` unless a specific mode is being forced for
    cross-checking.
    """

    alpha: float
    gamma: float
    mode: str
    rel_tol: float = 1e-13
    max_iter: int = 200

    def __post_init__(self):
        if self.alpha <= 0.0 or not math.isfinite(self.alpha):
            raise ValidationError("alpha", f"must be > 0, got {self.alpha!r}")
        if self.gamma < 0.0 or not math.isfinite(self.gamma):
            raise ValidationError("gamma", f"must be >= 0, got {self.gamma!r}")
        if self.mode not in _VALID_MODES:
            raise ValidationError("mode", f"unknown mode {self.mode!r}")
        if self.mode != "general-rootfind" and _MODE_BY_ALPHA.get(self.alpha) != self.mode:
            raise ValidationError(
                "mode", f"{self.mode!r} requires alpha to match exactly, got {self.alpha!r}"
            )
        if not (0.0 < self.rel_tol <= 1e-8):
            raise ValidationError("rel_tol", f"must be in (0, 1e-8], got {self.rel_tol!r}")
        if self.max_iter < 50:
            raise ValidationError("max_iter", f"must be >= 50, got {self.max_iter}")


def make_solver(
    alpha: float,
    gamma: float,
    *,
    force_general: bool = False,
    rel_tol: float = 1e-13,
    max_iter: int = 200,
) -> QAlphaSolver:
    """Pick the closed form when alpha matches one bit-exactly."""
    mode = "general-rootfind"
    if not force_general:
        mode = _MODE_BY_ALPHA.get(float(alpha), "general-rootfind")
    return QAlphaSolver(
        alpha=float(alpha), gamma=float(gamma), mode=mode,
        rel_tol=rel_tol, max_iter=max_iter,
    )


def solver_for(damper: DamperSpec, **kwargs) -> QAlphaSolver:
    return make_solver(damper.alpha, damper.gamma, **kwargs)


def damper_residual(xi: float, spec: DamperSpec | QAlphaSolver) -> float:
    """Evaluate xi + gamma*|xi|^alpha*sgn(xi), with sgn(0) = 0."""
    if xi == 0.0:
        return 0.0
    mag = abs(xi) + spec.gamma * abs(xi) ** spec.alpha
    return mag if xi > 0.0 else -mag


def _q2(r_abs: float, gamma: float) -> float:
    # Root of gamma*x^2 + x - r = 0, rationalized so small r*gamma does not
    # cancel: (-1 + sqrt(1+4rg))/(2g) == 2r/(1 + sqrt(1+4rg)).
    return 2.0 * r_abs / (1.0 + math.sqrt(1.0 + 4.0 * r_abs * gamma))


def _q_half(r_abs: float, gamma: float) -> float:
    # x + g*sqrt(x) = r; sqrt(x) = (-g + sqrt(g^2+4r))/2, rationalized.
    s = 2.0 * r_abs / (gamma + math.sqrt(gamma * gamma + 4.0 * r_abs))
    return s * s


def _q_third(r_abs: float, gamma: float, solver: QAlphaSolver) -> float:
    # Cardano root of w^3 + g*w - r = 0 with w = x^(1/3):
    #   u = (108 r + 12 sqrt(12 g^3 + 81 r^2))^(1/3),  w = u/6 - 2g/u.
    # The subtraction cancels when r << g^(3/2); fall back to the iterative
    # inverse there rather than return garbage digits.
    u3 = 108.0 * r_abs + 12.0 * math.sqrt(12.0 * gamma**3 + 81.0 * r_abs * r_abs)
    u = math.cbrt(u3) if hasattr(math, "cbrt") else u3 ** (1.0 / 3.0)
    u_sq = u * u
    diff = u_sq - 12.0 * gamma
    if diff < 0.05 * u_sq:
        return _invert_general(r_abs, solver)
    w = diff / (6.0 * u)
    # x = w^3 exactly (w solves the cubic); the equivalent r - g*w cancels for
    # small roots.
    return w * w * w


def _newton_bracketed(func, dfunc, lo: float, hi: float, f_tol: float, max_iter: int) -> float:
    """Safeguarded Newton for increasing func with func(lo) <= 0 <= func(hi).

    Newton steps that leave [lo, hi] are replaced by bisection.  Runs to step
    convergence (stalled iterate or machine-width bracket), not merely to a
    small residual: stopping on the residual alone would leave the root with
    an avoidable relative error whenever |func'| is large.  ``f_tol`` is the
    acceptance net checked only if the iteration budget runs out.
    """
    x = hi
    fx = func(x)
    if fx <= 0.0:
        return x
    f_lo = func(lo)
    if f_lo >= 0.0:
        return lo
    for _ in range(max_iter):
        if fx == 0.0:
            return x
        if fx > 0.0:
            hi = x
        else:
            lo = x
        if hi - lo <= 4.0 * math.ulp(hi):
            return x
        d = dfunc(x)
        step_ok = False
        if d > 0.0 and math.isfinite(d):
            x_new = x - fx / d
            if lo < x_new < hi:
                step_ok = True
        if not step_ok:
            x_new = 0.5 * (lo + hi)
        if x_new == x:
            return x
        x = x_new
        fx = func(x)
    if abs(fx) <= f_tol:
        return x
    raise ConvergenceError(
        f"inverse iteration exhausted {max_iter} iterations (residual {fx!r})"
    )


def _invert_general(r_abs: float, solver: QAlphaSolver) -> float:
    """Solve x + g*x^a = r for x >= 0 by safeguarded Newton.

    For a >= 1 the problem is solved in x directly (the derivative is bounded
    near zero).  For a < 1 the derivative blows up at x = 0, so the iteration
    runs on y = x^a instead, where y^(1/a) + g*y - r is smooth; x is recovered
    and polished with one Newton step in x.
    """
    if r_abs == 0.0:
        return 0.0
    a = solver.alpha
    g = solver.gamma
    f_tol = solver.rel_tol * max(1.0, r_abs)

    if a >= 1.0:
        def func(x):
            return x + g * x**a - r_abs

        def dfunc(x):
            return 1.0 + a * g * x ** (a - 1.0)

        return _newton_bracketed(func, dfunc, 0.0, r_abs, f_tol, solver.max_iter)

    inv_a = 1.0 / a

    def func_y(y):
        return y**inv_a + g * y - r_abs

    def dfunc_y(y):
        return inv_a * y ** (inv_a - 1.0) + g

    y_hi = r_abs**a
    if g > 0.0:
        y_hi = min(y_hi, r_abs / g)
    y = _newton_bracketed(func_y, dfunc_y, 0.0, y_hi, f_tol, solver.max_iter)
    x = y**inv_a
    # One polish step in x space removes the rounding amplified by the 1/a
    # power; the derivative is finite for any x > 0.
    if x > 0.0:
        res = x + g * x**a - r_abs
        d = 1.0 + a * g * x ** (a - 1.0)
        if math.isfinite(d) and d > 0.0:
            x_new = x - res / d
            if x_new > 0.0 and math.isfinite(x_new):
                x = x_new
    return x


def q_alpha(r: float, solver: QAlphaSolver) -> float:
    """Unique xi with xi + gamma*|xi|^alpha*sgn(xi) = r.

    Odd symmetry is exact by construction: the magnitude is solved for |r| and
    the sign of r is restored afterwards.
    """
    if not math.isfinite(r):
        raise ValidationError("r", f"must be finite, got {r!r}")
    if r == 0.0:
        return 0.0
    if solver.gamma == 0.0:
        return r
    r_abs = abs(r)
    mode = solver.mode
    if mode == "closed-form-2":
        mag = _q2(r_abs, solver.gamma)
    elif mode == "closed-form-1":
        mag = r_abs / (1.0 + solver.gamma)
    elif mode == "closed-form-half":
        mag = _q_half(r_abs, solver.gamma)
    elif mode == "closed-form-third":
        mag = _q_third(r_abs, solver.gamma, solver)
    else:
        mag = _invert_general(r_abs, solver)
    return mag if r > 0.0 else -mag


def two_q_minus_i(r: float, solver: QAlphaSolver) -> float:
    """Reflection operator 2*q_alpha(r) - r; vanishes at matched impedance."""
    return 2.0 * q_alpha(r, solver) - r


def two_q_minus_i_pow(k: int, r: float, solver: QAlphaSolver) -> float:
    """k-fold composition of the reflection operator; k = 0 is the identity."""
    if k < 0:
        raise ValidationError("k", f"must be >= 0, got {k}")
    out = r
    for _ in range(k):
        out = two_q_minus_i(out, solver)
    return out
