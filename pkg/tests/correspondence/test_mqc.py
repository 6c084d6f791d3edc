import numpy as np
import pytest

from tccmap.correspondence import (
    MeasurementBasis,
    iter_samples,
    mqc_joint,
    mqc_sample,
    partial_measurement_partition,
    sub_dual,
)
from tccmap.correspondence.mqc import TENSOR_CACHE_STATES, _ProjectionTree, _draw, trajectory_rng
from tccmap.exceptions import (
    ImpossibleOutcome,
    InvalidParameter,
    LengthMismatch,
    NonOrthonormalBasis,
)
from tccmap.utils import parity

TILTED = MeasurementBasis.from_angles(1.0, 0.3)


def test_basis_validation():
    with pytest.raises(NonOrthonormalBasis):
        MeasurementBasis(np.array([1, 0]), np.array([1, 0]))
    with pytest.raises(NonOrthonormalBasis):
        MeasurementBasis(np.array([2, 0]), np.array([0, 1]))
    rows = TILTED.rows()
    assert np.allclose(rows @ rows.conj().T, np.eye(2))


def test_x_basis_joint(hexagon):
    joint = mqc_joint(hexagon, MeasurementBasis.x())
    assert np.isclose(joint.total, 1.0)
    for m, p in enumerate(joint.probabilities):
        assert np.isclose(p, 1 / 32 if parity(m) == 0 else 0.0, atol=1e-15)


def test_z_basis_joint(hexagon):
    joint = mqc_joint(hexagon, MeasurementBasis.z())
    assert np.flatnonzero(joint.probabilities).tolist() == [0, 63]
    assert np.isclose(joint.probability([1] * 6), 0.5)
    assert joint.marginal([0]).probabilities.tolist() == [0.5, 0.5]
    assert joint.marginal([0, 3]).probabilities.tolist() == [0.5, 0.0, 0.0, 0.5]
    with pytest.raises(LengthMismatch):
        joint.probability([0, 1])


def test_joint_basis_count(hexagon):
    with pytest.raises(LengthMismatch):
        mqc_joint(hexagon, [MeasurementBasis.z()] * 5)


def test_z_basis_samples(hexagon):
    for sample in mqc_sample(hexagon, MeasurementBasis.z(), seed=1, n_samples=20):
        assert sample.bits in ((0,) * 6, (1,) * 6)
        assert sample.conditionals == (0.5, 1.0, 1.0, 1.0, 1.0, 1.0)
        assert sample.probability == 0.5


def test_x_basis_samples_have_even_parity(hexagon):
    for sample in mqc_sample(hexagon, MeasurementBasis.x(), seed=2, n_samples=50):
        assert sum(sample.bits) % 2 == 0
        assert np.isclose(sample.probability, 1 / 32)


def test_sample_probability_matches_joint(triangular_2x2):
    joint = mqc_joint(triangular_2x2, TILTED)
    for sample in mqc_sample(triangular_2x2, TILTED, seed=3, n_samples=25):
        assert np.isclose(sample.probability, joint.probability(sample.bits), rtol=1e-10)


def test_samples_reproducible(hexagon):
    a = mqc_sample(hexagon, TILTED, seed=9, n_samples=30, threads=1)
    b = mqc_sample(hexagon, TILTED, seed=9, n_samples=30, threads=4)
    assert a == b
    assert list(iter_samples(hexagon, TILTED, seed=9, n_samples=30)) == a
    assert mqc_sample(hexagon, TILTED, seed=9, n_samples=10) == a[:10]


def test_sample_frequencies(hexagon):
    joint = mqc_joint(hexagon, TILTED)
    counts = np.zeros(64)
    for sample in mqc_sample(hexagon, TILTED, seed=4, n_samples=100_000):
        counts[sum(b << v for v, b in enumerate(sample.bits))] += 1
    distance = 0.5 * np.abs(counts / counts.sum() - joint.probabilities).sum()
    assert distance < 0.02


def test_conditionals_independent_of_order(triangular_2x2, rng):
    joint = mqc_joint(triangular_2x2, TILTED)
    n = triangular_2x2.n_vertices
    for k in range(5):
        order = rng.permutation(n).tolist()
        for sample in mqc_sample(triangular_2x2, TILTED, order=order, seed=k, n_samples=20):
            bits = [sample.as_dict()[v] for v in range(n)]
            assert np.isclose(sample.probability, joint.probability(bits), rtol=1e-11, atol=0)


def test_unmeasured_last_qubit_is_marginalized(union_jack_1x1):
    n = union_jack_1x1.n_vertices
    marginal = mqc_joint(union_jack_1x1, TILTED).marginal(range(n - 1))
    for sample in mqc_sample(union_jack_1x1, TILTED, order=range(n - 1), seed=5, n_samples=30):
        expected = marginal.probability(list(sample.bits))
        assert np.isclose(sample.probability, expected, rtol=1e-11, atol=0)


def test_tensor_cache_is_bounded(hex_torus_9):
    n = hex_torus_9.n_vertices
    tree = _ProjectionTree(hex_torus_9, [TILTED] * n, range(n))
    for i in range(300):
        _draw(tree, trajectory_rng(11, i))
    assert 0 < tree.cached_bytes <= TENSOR_CACHE_STATES * tree.root.nbytes


def test_evicted_tensors_are_recomputed(hexagon, monkeypatch):
    import tccmap.correspondence.mqc as mqc

    expected = mqc_sample(hexagon, TILTED, seed=6, n_samples=200)
    monkeypatch.setattr(mqc, "TENSOR_CACHE_STATES", 0)
    assert mqc_sample(hexagon, TILTED, seed=6, n_samples=200, threads=4) == expected


def test_custom_order(hexagon):
    sample = mqc_sample(hexagon, MeasurementBasis.z(), order=[5, 1], seed=0)[0]
    assert sample.order == (5, 1)
    assert sample.outcome_bits(6)[0] == '-'
    assert sample.outcome_bits(6)[5] in '01'
    assert sample.as_dict()[5] == sample.as_dict()[1]


@pytest.mark.parametrize("order", [[0, 0], [6], [-1]])
def test_invalid_order(hexagon, order):
    with pytest.raises(InvalidParameter):
        mqc_sample(hexagon, MeasurementBasis.z(), order=order)


def test_impossible_prefix(hexagon):
    tree = _ProjectionTree(hexagon, [MeasurementBasis.z()] * 6, range(6))
    assert tree.branch((0,)) == (1.0, 0.0)
    with pytest.raises(ImpossibleOutcome):
        tree.tensor((0, 1))


def test_sub_dual(hexagon):
    sub = sub_dual(hexagon, [0])
    assert sub.vertices == (0,)
    assert sub.faces == (0, 1, 2)
    assert sub.dual.n_triangles == 1
    assert sub.dual.is_three_colored()
    full = sub_dual(hexagon, range(6))
    assert full.dual.n_sites == 7
    assert full.dual.n_triangles == 6


@pytest.mark.parametrize("measured,outcomes", [
    ([0, 2, 4], [0, 1, 1]),
    ([1], [1]),
    ([0, 1, 2, 3, 4, 5], [0, 1, 0, 0, 1, 1]),
])
def test_partial_measurement_dictionary(hexagon, measured, outcomes):
    result = partial_measurement_partition(hexagon, measured, outcomes, TILTED)
    assert not result.fallback
    assert result.relative_error < 1e-10
    assert result.dense > 0


def test_partial_measurement_nothing_measured(hexagon):
    result = partial_measurement_partition(hexagon, [], [], TILTED)
    assert np.isclose(result.dense, 2.0)
    assert np.isclose(result.dictionary, 2.0)


def test_partial_measurement_fallback(hexagon):
    with pytest.warns(UserWarning, match="dense value only"):
        result = partial_measurement_partition(hexagon, [0, 1], [0, 0], MeasurementBasis.x())
    assert result.fallback
    assert result.dictionary is None
    assert result.reason


def test_fallback_reason_names_lattice_vertex(hexagon):
    with pytest.warns(UserWarning, match="vertex 3: "):
        result = partial_measurement_partition(hexagon, [5, 3], [0, 0], MeasurementBasis.x())
    assert result.reason.startswith("vertex 3: ")


def test_partial_measurement_torus_fallback(minimal_torus):
    with pytest.warns(UserWarning):
        result = partial_measurement_partition(minimal_torus, [0], [1], TILTED)
    assert result.fallback
    assert np.isclose(result.dense, 1.0)


def test_partial_measurement_errors(hexagon):
    with pytest.raises(LengthMismatch):
        partial_measurement_partition(hexagon, [0, 1], [0], TILTED)
    with pytest.raises(InvalidParameter):
        partial_measurement_partition(hexagon, [0], [2], TILTED)
    with pytest.raises(InvalidParameter):
        partial_measurement_partition(hexagon, [0, 0], [0, 1], TILTED)
