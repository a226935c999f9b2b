"""Run configuration: INI parsing, validation and bundled presets.

The config file is flat-sectioned INI with SI units throughout; see
configs/schema.ini for the commented reference.  Exactly one of face area or
diameter, and exactly one of pressure amplitude or total force, may be given.
Load breakpoints must land on the time grid; the bundled presets snap the
requested duration to the nearest grid step (the snap is a relative change of
order 1/(2*N*t1/theta) and is reported in the run metadata).
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, replace

from .errors import ValidationError
from .loads import HalfSine, LoadSignal, Rectangular, Zero, check_grid_alignment
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

_LOAD_KINDS = ("rectangular", "halfsine", "zero")


@dataclass(frozen=True)
class OutputSpec:
    csv: str | None = None
    svg: str | None = None
    snapshot_times: tuple = ()
    snapshot_points: int | None = None


@dataclass(frozen=True)
class RunConfig:
    material: MaterialProperties
    geometry: Geometry
    alpha: float
    k_alpha: float
    load_kind: str
    p_a: float | None
    t1: float | None
    samples_per_transit: int
    t_end: float
    output: OutputSpec = field(default_factory=OutputSpec)
    title: str = "simulation"

    def with_updates(self, **kwargs) -> "RunConfig":
        return replace(self, **kwargs)


@dataclass(frozen=True)
class Problem:
    """Everything a solver needs, derived once from a RunConfig."""

    material: MaterialProperties
    geometry: Geometry
    derived: DerivedConstants
    damper: DamperSpec
    load: LoadSignal
    grid: TimeGrid


def build_problem(cfg: RunConfig, *, snap_t1: bool = False) -> Problem:
    derived = derive_constants(cfg.material, cfg.geometry)
    damper = derive_damper(cfg.k_alpha, cfg.alpha, derived, cfg.geometry)
    grid = make_grid(derived.transit_time, cfg.samples_per_transit, cfg.t_end)

    kind = cfg.load_kind
    if kind == "zero":
        load: LoadSignal = Zero()
    else:
        if cfg.p_a is None or cfg.t1 is None:
            raise ValidationError("load", f"kind {kind!r} needs p_a (or F) and t1")
        t1 = grid.snap_duration(cfg.t1) if snap_t1 else cfg.t1
        if kind == "rectangular":
            load = Rectangular(p_a=cfg.p_a, t1=t1)
        elif kind == "halfsine":
            load = HalfSine(p_a=cfg.p_a, t1=t1)
        else:
            raise ValidationError("kind", f"unknown load kind {kind!r}")
    check_grid_alignment(load, grid)
    return Problem(
        material=cfg.material, geometry=cfg.geometry, derived=derived,
        damper=damper, load=load, grid=grid,
    )


def _get_float(section, key: str, field_name: str) -> float:
    raw = section.get(key)
    if raw is None:
        raise ValidationError(field_name, "missing required key")
    try:
        return float(raw)
    except ValueError as exc:
        raise ValidationError(field_name, f"not a number: {raw!r}") from exc


def _exactly_one(section, keys: tuple[str, str], field_name: str) -> tuple[str, float]:
    present = [k for k in keys if section.get(k) is not None]
    if len(present) != 1:
        raise ValidationError(
            field_name, f"exactly one of {keys[0]!r} or {keys[1]!r} must be given"
        )
    k = present[0]
    return k, _get_float(section, k, f"{field_name}.{k}")


def parse_config(path: str) -> RunConfig:
    """Read and validate an INI run configuration."""
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    parser.optionxform = str  # keys are case sensitive (C vs c)
    read = parser.read(path)
    if not read:
        raise ValidationError("config", f"cannot read {path!r}")

    for name in ("material", "geometry", "damper", "load", "grid"):
        if not parser.has_section(name):
            raise ValidationError(name, "missing required section")

    m = parser["material"]
    material = MaterialProperties(
        stiffness=_get_float(m, "C", "material.C"),
        piezo=_get_float(m, "e", "material.e"),
        permittivity=_get_float(m, "eps", "material.eps"),
        density=_get_float(m, "rho", "material.rho"),
    )

    g = parser["geometry"]
    h = _get_float(g, "h", "geometry.h")
    key, val = _exactly_one(g, ("A", "d"), "geometry")
    if key == "A":
        geometry = Geometry(thickness=h, face_area=val)
    else:
        geometry = Geometry.from_diameter(h, val)

    d = parser["damper"]
    alpha = _get_float(d, "alpha", "damper.alpha")
    k_alpha = _get_float(d, "k_alpha", "damper.k_alpha")

    ld = parser["load"]
    kind = (ld.get("kind") or "").strip().lower()
    if kind not in _LOAD_KINDS:
        raise ValidationError("load.kind", f"must be one of {_LOAD_KINDS}, got {kind!r}")
    p_a = None
    t1 = None
    if kind != "zero":
        pkey, pval = _exactly_one(ld, ("p_a", "F"), "load")
        p_a = pval if pkey == "p_a" else pval / geometry.face_area
        t1 = _get_float(ld, "t1", "load.t1")

    gr = parser["grid"]
    n_raw = gr.get("samples_per_transit")
    if n_raw is None:
        raise ValidationError("grid.samples_per_transit", "missing required key")
    try:
        n = int(n_raw)
    except ValueError as exc:
        raise ValidationError(
            "grid.samples_per_transit", f"not an integer: {n_raw!r}"
        ) from exc
    t_end = _get_float(gr, "t_end", "grid.t_end")

    output = OutputSpec()
    if parser.has_section("output"):
        o = parser["output"]
        times = ()
        if o.get("snapshot_times"):
            try:
                times = tuple(float(s) for s in o["snapshot_times"].split(",") if s.strip())
            except ValueError as exc:
                raise ValidationError(
                    "output.snapshot_times", f"not a number list: {o['snapshot_times']!r}"
                ) from exc
        points = None
        if o.get("snapshot_points"):
            try:
                points = int(o["snapshot_points"])
            except ValueError as exc:
                raise ValidationError(
                    "output.snapshot_points", f"not an integer: {o['snapshot_points']!r}"
                ) from exc
        output = OutputSpec(
            csv=o.get("csv") or None,
            svg=o.get("svg") or None,
            snapshot_times=times,
            snapshot_points=points,
        )

    title = "simulation"
    if parser.has_section("run") and parser["run"].get("title"):
        title = parser["run"]["title"]

    return RunConfig(
        material=material, geometry=geometry, alpha=alpha, k_alpha=k_alpha,
        load_kind=kind, p_a=p_a, t1=t1, samples_per_transit=n, t_end=t_end,
        output=output, title=title,
    )


#: Bundled example scenarios: PZT-5A cylinder, 1 cm thickness and diameter,
#: 28640 N rectangular impulse; the two damper families crossed with three
#: pulse durations.
_PRESET_PARAMS = {
    "fig1": (0.5, 1000.0, 5e-6),
    "fig2": (0.5, 1000.0, 10e-6),
    "fig3": (0.5, 1000.0, 15e-6),
    "fig4": (2.0, 250.0, 5e-6),
    "fig5": (2.0, 250.0, 10e-6),
    "fig6": (2.0, 250.0, 15e-6),
}

PRESET_NAMES = tuple(sorted(_PRESET_PARAMS))


def preset_config(name: str, out_dir: str = ".") -> RunConfig:
    """Build a preset RunConfig; t1 is snapped to the N = 64 grid."""
    if name not in _PRESET_PARAMS:
        raise ValidationError("preset", f"unknown preset {name!r}; choose from {PRESET_NAMES}")
    alpha, k_alpha, t1 = _PRESET_PARAMS[name]
    material = PZT_5A
    geometry = Geometry.from_diameter(0.01, 0.01)
    derived = derive_constants(material, geometry)
    grid = make_grid(derived.transit_time, 64, 50e-6)
    cfg = RunConfig(
        material=material,
        geometry=geometry,
        alpha=alpha,
        k_alpha=k_alpha,
        load_kind="rectangular",
        p_a=28640.0 / geometry.face_area,
        t1=grid.snap_duration(t1),
        samples_per_transit=64,
        t_end=50e-6,
        output=OutputSpec(csv=f"{out_dir}/{name}.csv", svg=f"{out_dir}/{name}.svg"),
        title=f"{name}: alpha={alpha}, k_alpha={k_alpha:g}, t1={t1 * 1e6:g} us",
    )
    return cfg
