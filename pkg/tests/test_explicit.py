import numpy as np
import pytest

import piezodamp as pz
from piezodamp.errors import UnsupportedCaseError, ValidationError

THETA = 2.714566277424094e-06


@pytest.mark.parametrize("t1_us,expected", [
    (5.0, pz.DurationCase.CASE1),
    (10.0, pz.DurationCase.CASE2),
    (15.0, pz.DurationCase.CASE3),
])
def test_classification_of_example_durations(t1_us, expected):
    assert pz.classify_case(t1_us * 1e-6, THETA) is expected


def test_classification_boundaries_are_strict():
    assert pz.classify_case(2 * THETA, THETA) is pz.DurationCase.CASE2
    assert pz.classify_case(2 * THETA * (1 - 1e-12), THETA) is pz.DurationCase.CASE1
    assert pz.classify_case(6 * THETA, THETA) is pz.DurationCase.GENERAL


def test_classification_rejects_bad_inputs():
    with pytest.raises(ValidationError):
        pz.classify_case(0.0, THETA)
    with pytest.raises(ValidationError):
        pz.classify_case(1e-6, -1.0)


def test_general_case_has_no_closed_form(pzt, cylinder, derived, grid64):
    damper = pz.derive_damper(100.0, 1.0, derived, cylinder)
    load = pz.Rectangular(p_a=1e8, t1=grid64.snap_duration(7 * THETA))
    with pytest.raises(UnsupportedCaseError):
        pz.explicit_vh(pz.DurationCase.GENERAL, 1e-6, load, damper,
                       derived.impedance, derived.transit_time)


def test_case_must_cover_the_duration(derived, cylinder):
    damper = pz.derive_damper(100.0, 1.0, derived, cylinder)
    load = pz.Rectangular(p_a=1e8, t1=3.0 * THETA)  # a case-2 load
    with pytest.raises(ValidationError):
        pz.explicit_vh(pz.DurationCase.CASE1, 1e-6, load, damper,
                       derived.impedance, derived.transit_time)


@pytest.fixture(scope="module")
def setup(pzt, cylinder, derived):
    grid = pz.make_grid(derived.transit_time, 32, 12 * derived.transit_time)
    return pzt, cylinder, derived, grid


@pytest.mark.parametrize("alpha,k_alpha", [(0.5, 1000.0), (2.0, 250.0), (1.37, 400.0)])
@pytest.mark.parametrize("t1_us", [5.0, 10.0, 15.0])
def test_explicit_matches_recursion_over_twelve_transits(setup, alpha, k_alpha, t1_us):
    # the marching solver is the oracle for every branch of every case
    pzt, cylinder, derived, grid = setup
    damper = pz.derive_damper(k_alpha, alpha, derived, cylinder)
    t1 = grid.snap_duration(t1_us * 1e-6)
    load = pz.Rectangular(p_a=3.6466e8, t1=t1)
    res = pz.run_recursive(pzt, cylinder, damper, load, grid)
    case = pz.classify_case(t1, derived.transit_time)
    z, th = derived.impedance, derived.transit_time
    vh = np.array([pz.explicit_vh(case, float(t), load, damper, z, th) for t in res.times])
    v0 = np.array([pz.explicit_v0(case, float(t), load, damper, z, th) for t in res.times])
    scale = max(np.max(np.abs(res.history.vh)), np.max(np.abs(res.history.v0)))
    assert np.max(np.abs(vh - res.history.vh)) <= 1e-12 * scale
    assert np.max(np.abs(v0 - res.history.v0)) <= 1e-12 * scale


def test_direct_wave_branch(derived, cylinder):
    # 0 <= t < 2*theta: v(h,t) = p(t)/z in every case
    damper = pz.derive_damper(640.0, 0.8, derived, cylinder)
    z, th = derived.impedance, derived.transit_time
    load = pz.Rectangular(p_a=2e8, t1=1.5 * th)
    for t in (0.0, 0.4 * th, 1.2 * th, 1.9 * th):
        got = pz.explicit_vh(pz.DurationCase.CASE1, t, load, damper, z, th)
        assert got == pz.eval_load(load, t) / z


def test_quiet_before_first_transit(derived, cylinder):
    damper = pz.derive_damper(640.0, 0.8, derived, cylinder)
    z, th = derived.impedance, derived.transit_time
    load = pz.Rectangular(p_a=2e8, t1=3 * th)
    for t in (0.0, 0.3 * th, 0.999 * th):
        assert pz.explicit_v0(pz.DurationCase.CASE2, t, load, damper, z, th) == 0.0


def test_first_nonzero_bottom_branch_applies_inverse(derived, cylinder):
    # theta <= t < 3*theta: v(0,t) = Q[2 p(t-theta)/z]
    damper = pz.derive_damper(640.0, 0.8, derived, cylinder)
    solver = pz.solver_for(damper)
    z, th = derived.impedance, derived.transit_time
    load = pz.Rectangular(p_a=2e8, t1=3 * th)
    for t in (1.0 * th, 1.7 * th, 2.9 * th):
        got = pz.explicit_v0(pz.DurationCase.CASE2, t, load, damper, z, th)
        want = pz.q_alpha(2.0 * pz.eval_load(load, t - th) / z, solver)
        assert got == pytest.approx(want, rel=1e-14, abs=1e-300)


def test_free_bottom_face_echoes_double(derived, cylinder):
    # gamma = 0: window k carries 2 p(t - 2k theta)/z
    damper = pz.derive_damper(0.0, 1.0, derived, cylinder)
    z, th = derived.impedance, derived.transit_time
    load = pz.Rectangular(p_a=2e8, t1=1.0 * th)
    for k in (1, 2, 3):
        t = (2 * k + 0.25) * th
        got = pz.explicit_vh(pz.DurationCase.CASE1, t, load, damper, z, th)
        assert got == pytest.approx(2.0 * pz.eval_load(load, t - 2 * k * th) / z, rel=1e-13)


def test_matched_impedance_kills_echoes(derived, cylinder):
    damper = pz.derive_damper(derived.impedance * cylinder.face_area, 1.0, derived, cylinder)
    z, th = derived.impedance, derived.transit_time
    load = pz.Rectangular(p_a=2e8, t1=1.5 * th)
    for t in (2 * th, 2.5 * th, 5 * th, 9.7 * th):
        assert pz.explicit_vh(pz.DurationCase.CASE1, t, load, damper, z, th) == 0.0


def test_window_indexing_has_no_gaps(pzt, derived, cylinder):
    # every t lands in exactly one window and the chain is continuous in
    # between: compare against the recursion on a dense non-special grid
    damper = pz.derive_damper(380.0, 1.25, derived, cylinder)
    grid = pz.make_grid(derived.transit_time, 48, 11 * derived.transit_time)
    t1 = grid.snap_duration(2.6 * derived.transit_time)
    load = pz.Rectangular(p_a=1e8, t1=t1)
    res = pz.run_recursive(pzt, cylinder, damper, load, grid)
    case = pz.classify_case(t1, derived.transit_time)
    z, th = derived.impedance, derived.transit_time
    vh = np.array([pz.explicit_vh(case, float(t), load, damper, z, th) for t in res.times])
    scale = np.max(np.abs(res.history.vh))
    assert np.max(np.abs(vh - res.history.vh)) <= 1e-12 * scale
