import numpy as np
import pytest

from tccmap.codestate import (
    ProductState,
    StateVector,
    apply_pauli,
    code_state,
    hamiltonian_expectation,
)
from tccmap.codestate.vectors import expectation
from tccmap.exceptions import CapExceeded, InvalidParameter, LengthMismatch
from tccmap.pauli import boundary_group, stabilizer_set


def test_hexagon_code_state(hexagon):
    state = code_state(hexagon)
    assert state.n_qubits == 6
    assert state.support().tolist() == [0, 63]
    assert state.norm2() == 2.0


def test_code_state_norm_is_group_size(torus):
    if torus.n_vertices > 18:
        pytest.skip("dense state too large for a quick test")
    state = code_state(torus)
    assert state.norm2() == len(boundary_group(torus))


def test_code_state_is_stabilized(patch_colex):
    if patch_colex.n_vertices > 12:
        pytest.skip("dense state too large for a quick test")
    state = code_state(patch_colex)
    for op in stabilizer_set(patch_colex).ops():
        assert apply_pauli(state, op).equals(state)
        assert expectation(state, op) == 1.0


@pytest.mark.parametrize("fixture,energy", [
    ("hexagon", -8.0),
    ("single_triangle", -3.0),
    ("union_jack_1x1", -6.0),
    ("minimal_torus", -6.0),
])
def test_hamiltonian_ground_energy(request, fixture, energy):
    assert hamiltonian_expectation(request.getfixturevalue(fixture)) == energy


def test_dense_cap(monkeypatch, hexagon):
    import tccmap.codestate.vectors as vectors
    monkeypatch.setattr(vectors, 'TCCMAP_DENSE_QUBIT_CAP', 4)
    with pytest.raises(CapExceeded):
        code_state(hexagon)


def test_state_vector_bytes(hexagon):
    state = code_state(hexagon)
    assert StateVector.from_bytes(state.to_bytes()).equals(state)


def test_state_vector_length():
    with pytest.raises(LengthMismatch):
        StateVector(np.ones(3))
    with pytest.raises(LengthMismatch):
        StateVector(np.ones((2, 2)))


def test_equals_tolerance():
    a = StateVector(np.array([1.0, 0.0]))
    b = StateVector(np.array([1.0 + 1e-12, 0.0]))
    assert not a.equals(b)
    assert a.equals(b, atol=1e-10)
    assert not a.equals(StateVector(np.ones(4)))


def test_product_state_vector():
    phi = ProductState.from_pairs([[1, 2], [3, 5]])
    assert phi.vector().tolist() == [3, 6, 5, 10]


def test_thermal_product_state():
    phi = ProductState.thermal(3, 0.5)
    assert np.allclose(phi.pairs[:, 0], np.cosh(0.5))
    assert np.allclose(phi.pairs[:, 1], np.sinh(0.5))


@pytest.mark.parametrize("pairs", [
    np.ones(4),
    np.ones((2, 3)),
    np.array([[1.0, np.nan]]),
    np.array([[1.0, 0.0], [0.0, 0.0]]),
])
def test_product_state_validation(pairs):
    with pytest.raises(InvalidParameter):
        ProductState(pairs)


def test_apply_pauli_length(hexagon):
    from tccmap.pauli import PauliOp
    with pytest.raises(LengthMismatch):
        apply_pauli(code_state(hexagon), PauliOp(3, x=1))
