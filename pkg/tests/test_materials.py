import math

import pytest
from hypothesis import given, strategies as st

import piezodamp as pz
from piezodamp.errors import ValidationError


def test_pzt5a_wave_speed(derived):
    # reference value 3684.06 m/s
    assert abs(derived.wave_speed - 3684.06) <= 0.5


def test_pzt5a_transit_time(derived):
    # h = 1 cm -> 2.71 us
    assert abs(derived.transit_time * 1e6 - 2.71) <= 0.01


def test_decoupled_limit_reduces_to_elastic():
    mat = pz.MaterialProperties(stiffness=2e10, piezo=0.0, permittivity=1e-9, density=5000.0)
    geo = pz.Geometry(thickness=0.02, face_area=1e-4)
    der = pz.derive_constants(mat, geo)
    assert der.stiffened_modulus == mat.stiffness
    assert der.wave_speed == math.sqrt(mat.stiffness / mat.density)


def test_theta_times_c_is_h(derived, cylinder):
    assert abs(derived.transit_time * derived.wave_speed - cylinder.thickness) \
        <= 4 * math.ulp(cylinder.thickness)


@pytest.mark.parametrize("field,kwargs", [
    ("stiffness", dict(stiffness=-1.0, piezo=1.0, permittivity=1e-9, density=1.0)),
    ("stiffness", dict(stiffness=float("nan"), piezo=1.0, permittivity=1e-9, density=1.0)),
    ("permittivity", dict(stiffness=1.0, piezo=1.0, permittivity=0.0, density=1.0)),
    ("density", dict(stiffness=1.0, piezo=1.0, permittivity=1e-9, density=-2.0)),
    ("piezo", dict(stiffness=1.0, piezo=-0.1, permittivity=1e-9, density=1.0)),
])
def test_material_validation_names_field(field, kwargs):
    with pytest.raises(ValidationError) as exc:
        pz.MaterialProperties(**kwargs)
    assert exc.value.field == field


def test_geometry_validation():
    with pytest.raises(ValidationError):
        pz.Geometry(thickness=0.0, face_area=1.0)
    with pytest.raises(ValidationError):
        pz.Geometry(thickness=1.0, face_area=-1.0)


@given(s=st.floats(min_value=0.1, max_value=10.0))
def test_scale_consistency(s):
    # scaling all of C, e^2/eps, rho by s^2 leaves the wave speed unchanged;
    # scaling rho alone by s^2 divides it by s
    base = pz.MaterialProperties(stiffness=5e10, piezo=20.0, permittivity=8e-9, density=7000.0)
    geo = pz.Geometry(thickness=0.01, face_area=1e-4)
    c0 = pz.derive_constants(base, geo).wave_speed
    scaled = pz.MaterialProperties(
        stiffness=base.stiffness * s * s,
        piezo=base.piezo * s,
        permittivity=base.permittivity,
        density=base.density * s * s,
    )
    assert pz.derive_constants(scaled, geo).wave_speed == pytest.approx(c0, rel=1e-12)
    heavier = pz.MaterialProperties(
        stiffness=base.stiffness, piezo=base.piezo,
        permittivity=base.permittivity, density=base.density * s * s,
    )
    assert pz.derive_constants(heavier, geo).wave_speed * s == pytest.approx(c0, rel=1e-12)


class TestDeriveDamper:
    def test_sqrt_family_gamma(self, derived, cylinder):
        # hand arithmetic: gamma = 1000/(rho*c*A) with rho*c = 2.8551e7,
        # A = 7.854e-5 -> 0.4460
        damper = pz.derive_damper(1000.0, 0.5, derived, cylinder)
        assert abs(damper.gamma - 0.4460) <= 5e-4

    def test_quadratic_family_gamma(self, derived, cylinder):
        damper = pz.derive_damper(250.0, 2.0, derived, cylinder)
        assert abs(damper.gamma - 0.1115) <= 2e-4

    def test_zero_damping(self, derived, cylinder):
        assert pz.derive_damper(0.0, 1.0, derived, cylinder).gamma == 0.0

    def test_rejects_bad_inputs(self, derived, cylinder):
        with pytest.raises(ValidationError):
            pz.derive_damper(100.0, 0.0, derived, cylinder)
        with pytest.raises(ValidationError):
            pz.derive_damper(-1.0, 1.0, derived, cylinder)

    def test_gamma_monotonicity(self, pzt, derived, cylinder):
        g1 = pz.derive_damper(100.0, 1.0, derived, cylinder).gamma
        g2 = pz.derive_damper(200.0, 1.0, derived, cylinder).gamma
        assert g2 > g1
        bigger_face = pz.Geometry(thickness=cylinder.thickness,
                                  face_area=2 * cylinder.face_area)
        assert pz.derive_damper(100.0, 1.0, derived, bigger_face).gamma < g1
        # denser material raises z = sqrt(C^D * rho), lowering gamma
        dense = pz.MaterialProperties(
            stiffness=pzt.stiffness, piezo=pzt.piezo,
            permittivity=pzt.permittivity, density=4 * pzt.density,
        )
        der_dense = pz.derive_constants(dense, cylinder)
        assert pz.derive_damper(100.0, 1.0, der_dense, cylinder).gamma < g1


class TestMakeGrid:
    def test_four_transits(self):
        theta = 2.714e-6
        grid = pz.make_grid(theta, 4, 4 * theta)
        assert grid.dt == theta / 4
        assert grid.step_count == 16
        assert grid.t_end >= 4 * theta * (1 - 1e-12)

    def test_single_sample(self):
        theta = 1e-6
        grid = pz.make_grid(theta, 1, 5e-6)
        assert grid.dt == theta

    def test_short_window_gets_one_step(self):
        grid = pz.make_grid(1e-6, 4, 1e-8)
        assert grid.step_count == 1

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValidationError):
            pz.make_grid(1e-6, 0, 1e-5)
        with pytest.raises(ValidationError):
            pz.make_grid(-1e-6, 4, 1e-5)
        with pytest.raises(ValidationError):
            pz.make_grid(1e-6, 4, 0.0)

    def test_times_are_exact_multiples(self):
        grid = pz.make_grid(3e-6, 8, 2e-5)
        t = grid.times
        assert t[0] == 0.0
        assert t[5] == 5 * grid.dt

    def test_snap_duration(self):
        grid = pz.make_grid(2.714566277424094e-06, 64, 50e-6)
        t1 = grid.snap_duration(5e-6)
        assert t1 == 118 * grid.dt
        assert abs(t1 - 5e-6) <= 0.5 * grid.dt
