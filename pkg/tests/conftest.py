import numpy as np
import pytest

from tccmap.colex.builders import (
    build_48_torus,
    build_hex_torus,
    hexagon_patch,
    single_triangle_patch,
    triangular_patch,
    union_jack_patch,
)
from tccmap.colex.dual import build_bordered

BETA_J_GRID = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0]

PATCHES = {
    'hexagon_patch': hexagon_patch,
    'single_triangle': single_triangle_patch,
    'triangular_patch_2x2': lambda: triangular_patch(2, 2),
    'union_jack_patch_1x1': lambda: union_jack_patch(1, 1),
    'union_jack_patch_2x2': lambda: union_jack_patch(2, 2),
}

TORI = {
    'hex_torus_minimal': lambda: build_hex_torus(1, 3),
    'hex_torus_9': lambda: build_hex_torus(3, 3),
    'four8_torus_2x2': lambda: build_48_torus(2, 2),
}


@pytest.fixture(scope="session")
def hexagon():
    return build_bordered(hexagon_patch())


@pytest.fixture(scope="session")
def single_triangle():
    return build_bordered(single_triangle_patch())


@pytest.fixture(scope="session")
def triangular_2x2():
    return build_bordered(triangular_patch(2, 2))


@pytest.fixture(scope="session")
def union_jack_1x1():
    return build_bordered(union_jack_patch(1, 1))


@pytest.fixture(scope="session")
def union_jack_2x2():
    return build_bordered(union_jack_patch(2, 2))


@pytest.fixture(scope="session")
def minimal_torus():
    return build_hex_torus(1, 3)


@pytest.fixture(scope="session")
def hex_torus_9():
    return build_hex_torus(3, 3)


@pytest.fixture(scope="session")
def four8_torus():
    return build_48_torus(2, 2)


@pytest.fixture(scope="session", params=sorted(PATCHES))
def patch_colex(request):
    return build_bordered(PATCHES[request.param]())


@pytest.fixture(scope="session", params=sorted(TORI))
def torus(request):
    return TORI[request.param]()


@pytest.fixture
def rng():
    return np.random.default_rng(20200101)
