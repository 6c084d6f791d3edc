import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tccmap.colex import (
    Color,
    DualTriangulation,
    build_dual,
    hexagon_patch,
    triangular_patch,
    union_jack_patch,
)
from tccmap.exceptions import ColoringException, InvalidParameter, LengthMismatch
from tccmap.spinmodel import (
    NEGATIVE_PARITY_TAGS,
    POSITIVE_PARITY_TAGS,
    CouplingSet,
    SpinConfig,
    color_flip,
    energy,
    ground_states,
    parity_tag_config,
    partition_exact,
)


@pytest.mark.parametrize("sign,tags", [
    (1, POSITIVE_PARITY_TAGS),
    ('+', POSITIVE_PARITY_TAGS),
    (-1, NEGATIVE_PARITY_TAGS),
    ('-', NEGATIVE_PARITY_TAGS),
])
def test_hexagon_ground_states(sign, tags):
    dual = hexagon_patch()
    found = {c.mask for c in ground_states(dual, sign)}
    assert found == {parity_tag_config(dual, tag).mask for tag in tags}


@pytest.mark.parametrize("sign,tags", [(1, POSITIVE_PARITY_TAGS), (-1, NEGATIVE_PARITY_TAGS)])
def test_triangular_torus_ground_states(hex_torus_9, sign, tags):
    dual = build_dual(hex_torus_9)
    assert dual.n_sites == 9
    found = sorted(c.mask for c in ground_states(dual, sign))
    assert found == sorted(parity_tag_config(dual, tag).mask for tag in tags)


@pytest.mark.parametrize("make_dual", [
    hexagon_patch,
    lambda: triangular_patch(2, 2),
    lambda: union_jack_patch(1, 1),
])
def test_partition_even_in_couplings(make_dual, rng):
    dual = make_dual()
    J = rng.uniform(-1.5, 1.5, size=dual.n_triangles)
    h = np.zeros(dual.n_sites)
    z = partition_exact(dual, CouplingSet(0.8, J, h))
    assert np.isclose(partition_exact(dual, CouplingSet(0.8, -J, h)), z, rtol=1e-12, atol=0)


def test_torus_partition_even_in_couplings(hex_torus_9):
    dual = build_dual(hex_torus_9)
    for beta_j in (0.3, 1.1):
        z = partition_exact(dual, CouplingSet.uniform(dual, 1.0, beta_j))
        assert np.isclose(partition_exact(dual, CouplingSet.uniform(dual, 1.0, -beta_j)), z)


def test_ground_state_energy():
    dual = union_jack_patch(1, 1)
    couplings = CouplingSet.uniform(dual, 1.0, -1.0)
    for config in ground_states(dual, -1, threads=2):
        assert energy(config, dual, couplings) == -4


def test_parity_tags_are_products():
    assert all(a * b * c == 1 for a, b, c in POSITIVE_PARITY_TAGS)
    assert all(a * b * c == -1 for a, b, c in NEGATIVE_PARITY_TAGS)


def test_parity_tag_config():
    dual = hexagon_patch()
    config = parity_tag_config(dual, (-1, 1, 1))
    assert config.mask == 0b1
    with pytest.raises(InvalidParameter):
        parity_tag_config(dual, (1, 0, 1))


@pytest.mark.fuzzing
@settings(max_examples=50, deadline=1000)
@given(
    mask=st.integers(min_value=0, max_value=(1 << 13) - 1),
    s_r=st.sampled_from([1, -1]),
    s_g=st.sampled_from([1, -1]),
)
def test_color_flip_preserves_energy(mask, s_r, s_g):
    dual = union_jack_patch(2, 2)
    couplings = CouplingSet(1.0, np.linspace(-1, 1, 16), np.zeros(13))
    config = SpinConfig(13, mask)
    flipped = color_flip(config, dual, s_r, s_g)
    assert energy(flipped, dual, couplings) == energy(config, dual, couplings)
    assert color_flip(flipped, dual, s_r, s_g) == config


def test_color_flip_errors():
    dual = hexagon_patch()
    with pytest.raises(InvalidParameter):
        color_flip(SpinConfig(7), dual, 2, 1)
    with pytest.raises(LengthMismatch):
        color_flip(SpinConfig(3), dual, 1, -1)
    bad = DualTriangulation((Color.RED, Color.RED, Color.BLUE), ((0, 1, 2),), border=True)
    with pytest.raises(ColoringException):
        color_flip(SpinConfig(3), bad, 1, -1)
    with pytest.raises(ColoringException):
        ground_states(bad, 1)


@pytest.mark.parametrize("sign", [0, 'x', 2])
def test_ground_states_sign(sign):
    with pytest.raises(InvalidParameter):
        ground_states(hexagon_patch(), sign)
