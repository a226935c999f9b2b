import pytest

import piezodamp as pz


@pytest.fixture(scope="session")
def pzt():
    return pz.PZT_5A


@pytest.fixture(scope="session")
def cylinder():
    # 1 cm thickness, 1 cm diameter
    return pz.Geometry.from_diameter(0.01, 0.01)


@pytest.fixture(scope="session")
def derived(pzt, cylinder):
    return pz.derive_constants(pzt, cylinder)


@pytest.fixture(scope="session")
def p_amp(cylinder):
    return pz.face_pressure_from_force(28640.0, cylinder)


@pytest.fixture(scope="session")
def grid64(derived):
    return pz.make_grid(derived.transit_time, 64, 50e-6)
