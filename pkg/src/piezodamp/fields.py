"""Interior fields rebuilt from the boundary histories.

Interior values are combinations of time-delayed boundary traces.  Positions
are restricted to x = j*h/N (so the delays x/c and (h-x)/c are exact index
shifts on the grid); richer spatial resolution comes from raising N, never
from interpolation.

With the lower electrode grounded and zero electric displacement the
potential is phi(x,t) = (e/eps) * [u(x,t) - u(0,t)], linear in u.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AlignmentError, ValidationError
from .loads import eval_load
from .solver import SimulationResult, cumulative_integral


def _grid_steps(value: float, unit: float, name: str, limit: int) -> int:
    """Exact number of unit steps in value; rejects off-grid inputs."""
    ratio = value / unit
    idx = round(ratio)
    if abs(ratio - idx) > 1e-9 * max(1.0, abs(ratio)):
        raise AlignmentError(name, f"{value!r} is not a multiple of {unit!r}")
    if idx < 0 or idx > limit:
        raise ValidationError(name, f"{value!r} outside the simulated range")
    return int(idx)


def _delayed(series: np.ndarray, i: int) -> float:
    """Causal read: negative indices are the quiescent past."""
    return float(series[i]) if i >= 0 else 0.0


def _indices(x: float, t: float, result: SimulationResult) -> tuple[int, int, int]:
    geo = result.geometry
    grid = result.grid
    n = grid.samples_per_transit
    jx = _grid_steps(x, geo.thickness / n, "x", n)
    it = _grid_steps(t, grid.dt, "t", grid.step_count)
    return it, it - jx, it - (n - jx)  # (time, delay from x=0, delay from x=h)


def velocity_at(x: float, t: float, result: SimulationResult) -> float:
    """v(x,t) = [v0(t-x/c) + vh(t-(h-x)/c)]/2 + [p(t-(h-x)/c) - sigma0(t-x/c)]/(2z)."""
    _, i0, ih = _indices(x, t, result)
    h = result.history
    z = result.derived.impedance
    p_del = _delayed_load(result, ih)
    return 0.5 * (_delayed(h.v0, i0) + _delayed(h.vh, ih)) + (
        p_del - _delayed(h.sigma0, i0)
    ) / (2.0 * z)


def stress_at(x: float, t: float, result: SimulationResult) -> float:
    """sigma(x,t) = z*[vh(t-(h-x)/c) - v0(t-x/c)]/2 + [sigma0(t-x/c) + p(t-(h-x)/c)]/2.

    The two characteristic families enter the stress with opposite velocity
    signs; the boundary limits reduce to the applied load at x = h and the
    damper stress at x = 0.
    """
    _, i0, ih = _indices(x, t, result)
    h = result.history
    z = result.derived.impedance
    p_del = _delayed_load(result, ih)
    return 0.5 * z * (_delayed(h.vh, ih) - _delayed(h.v0, i0)) + 0.5 * (
        _delayed(h.sigma0, i0) + p_del
    )


def _delayed_load(result: SimulationResult, i: int) -> float:
    if i < 0:
        return 0.0
    return eval_load(result.load, float(i) * result.grid.dt)


def displacement_at(x: float, t: float, result: SimulationResult) -> float:
    """u(x,t) as the cumulative time integral of v(x, .) up to t.

    Uses the same quadrature rule as the solver used for the boundary
    displacements, so the boundary limits reproduce u0 and uh bit for bit
    up to rounding.
    """
    it, _, _ = _indices(x, t, result)
    v = np.array([velocity_at(x, float(j) * result.grid.dt, result) for j in range(it + 1)])
    u = cumulative_integral(v, result.grid.dt, result.load.quadrature)
    return float(u[it])


def potential_at(x: float, t: float, result: SimulationResult) -> float:
    """phi(x,t) with grounded lower electrode and open-circuit upper face."""
    it, _, _ = _indices(x, t, result)
    coupling = result.material.piezo / result.material.permittivity
    return coupling * (displacement_at(x, t, result) - float(result.history.u0[it]))


@dataclass(frozen=True)
class FieldSnapshot:
    """All four fields sampled at x_j = j*h/P for one grid time."""

    time: float
    positions: np.ndarray  # m
    u: np.ndarray          # m
    v: np.ndarray          # m/s
    sigma: np.ndarray      # Pa
    phi: np.ndarray        # V
    electric_displacement: float = 0.0  # C/m^2, identically zero here

    def __post_init__(self):
        for name in ("positions", "u", "v", "sigma", "phi"):
            getattr(self, name).flags.writeable = False


def snapshot(t: float, p_divisions: int, result: SimulationResult) -> FieldSnapshot:
    """Evaluate the interior profile on x_j = j*h/P; P must divide N.

    The snapshot validates its own boundary consistency before returning:
    the grounded face sits at zero potential, the top-face stress equals the
    applied load and the edge columns reproduce the boundary histories.
    """
    grid = result.grid
    n = grid.samples_per_transit
    if p_divisions < 1 or n % p_divisions != 0:
        raise AlignmentError(
            "snapshot_points",
            f"{p_divisions} must divide samples_per_transit = {n}",
        )
    h_thick = result.geometry.thickness
    xs = np.array([j * h_thick / p_divisions for j in range(p_divisions + 1)])
    # guard against float drift pushing the last point off the admissible set
    xs[-1] = h_thick

    u = np.array([displacement_at(x, t, result) for x in xs])
    v = np.array([velocity_at(x, t, result) for x in xs])
    sigma = np.array([stress_at(x, t, result) for x in xs])
    coupling = result.material.piezo / result.material.permittivity
    it = _grid_steps(t, grid.dt, "t", grid.step_count)
    phi = coupling * (u - float(result.history.u0[it]))

    _validate_snapshot(t, it, u, v, sigma, phi, result)
    return FieldSnapshot(time=float(t), positions=xs, u=u, v=v, sigma=sigma, phi=phi)


def _validate_snapshot(t, it, u, v, sigma, phi, result: SimulationResult) -> None:
    hist = result.history
    z = result.derived.impedance
    p_now = eval_load(result.load, float(it) * result.grid.dt)
    stress_scale = max(np.max(np.abs(sigma)), abs(p_now), z * np.max(np.abs(hist.vh)), 1.0)
    vel_scale = max(np.max(np.abs(hist.vh)), np.max(np.abs(hist.v0)), 1.0)
    disp_scale = max(np.max(np.abs(hist.u0)), np.max(np.abs(hist.uh)), 1e-30)
    checks = [
        ("phi[0]", abs(phi[0]), 1e-9 * max(np.max(np.abs(phi)), 1e-30)),
        ("sigma[P]", abs(sigma[-1] - p_now), 1e-9 * stress_scale),
        ("v[0]", abs(v[0] - hist.v0[it]), 1e-9 * vel_scale),
        ("v[P]", abs(v[-1] - hist.vh[it]), 1e-9 * vel_scale),
        ("u[0]", abs(u[0] - hist.u0[it]), 1e-9 * disp_scale),
        ("u[P]", abs(u[-1] - hist.uh[it]), 1e-9 * disp_scale),
    ]
    for name, err, tol in checks:
        if err > tol:
            raise ValidationError(
                "snapshot", f"boundary consistency failed for {name}: |err| = {err!r}"
            )
