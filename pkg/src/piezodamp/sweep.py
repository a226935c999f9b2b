"""Parameter sweeps over the damper and load axes with summary metrics.

Rows follow the cartesian product of the axes in the fixed order
(alpha, k_alpha, t1, p_a) with each axis sorted ascending, so the summary
is deterministic regardless of worker scheduling.  Runs are independent and
execute on a thread pool; results are assembled in product order.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .config import Problem, RunConfig, build_problem
from .errors import ValidationError
from .metrics import voltage_metrics
from .solver import run_recursive

AXIS_ORDER = ("alpha", "k_alpha", "t1", "p_a")


@dataclass(frozen=True)
class SweepSpec:
    base: RunConfig
    axes: dict = field(default_factory=dict)  # axis name -> list of values
    cap: int = 10_000
    workers: int = 1

    def __post_init__(self):
        for name in self.axes:
            if name not in AXIS_ORDER:
                raise ValidationError(
                    "axes", f"unknown axis {name!r}; valid axes: {AXIS_ORDER}"
                )
        size = 1
        for values in self.axes.values():
            if not values:
                raise ValidationError("axes", "axis value lists must be non-empty")
            size *= len(values)
        if size > self.cap:
            raise ValidationError(
                "axes", f"cartesian product has {size} runs, above the cap of {self.cap}"
            )
        if self.workers < 1:
            raise ValidationError("workers", f"must be >= 1, got {self.workers}")


def _configure_run(base: RunConfig, assignment: dict) -> Problem:
    cfg = base
    updates = {k: v for k, v in assignment.items() if k in ("alpha", "k_alpha")}
    if "p_a" in assignment:
        updates["p_a"] = assignment["p_a"]
    if "t1" in assignment:
        updates["t1"] = assignment["t1"]
    cfg = cfg.with_updates(**updates)
    # swept durations are snapped like the presets; round-number durations
    # would otherwise never align with the grid
    return build_problem(cfg, snap_t1="t1" in assignment)


def run_sweep(spec: SweepSpec) -> list[dict]:
    """One summary row per run, in deterministic product order."""
    active = [name for name in AXIS_ORDER if name in spec.axes]
    value_lists = [sorted(spec.axes[name]) for name in active]
    assignments = [dict(zip(active, combo)) for combo in itertools.product(*value_lists)]
    if not assignments:
        assignments = [{}]

    def one(assignment: dict) -> dict:
        problem = _configure_run(spec.base, assignment)
        result = run_recursive(
            problem.material, problem.geometry, problem.damper, problem.load, problem.grid
        )
        m = voltage_metrics(result)
        row = dict(assignment)
        row.update(
            peak_abs_voltage_V=m.peak_abs_voltage,
            t_peak_s=m.t_peak,
            peak_spacing_s=m.peak_spacing,
            post_load_envelope_ratio=m.post_load_envelope_ratio,
        )
        return row

    if spec.workers == 1:
        rows = [one(a) for a in assignments]
    else:
        with ThreadPoolExecutor(max_workers=spec.workers) as pool:
            rows = list(pool.map(one, assignments))
    return rows


def render_summary_csv(rows: list[dict], axes: dict) -> str:
    active = [name for name in AXIS_ORDER if name in axes]
    metric_cols = ["peak_abs_voltage_V", "t_peak_s", "peak_spacing_s", "post_load_envelope_ratio"]
    header = active + metric_cols
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(repr(float(row[c])) for c in header))
    return "\n".join(lines) + "\n"


def write_summary_csv(rows: list[dict], axes: dict, path: str) -> None:
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", newline="\n") as f:
        f.write(render_summary_csv(rows, axes))
