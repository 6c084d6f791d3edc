"""
Measurement-based sampling of color code states.

Outcome ``m`` on qubit ``v`` projects onto ``bases[v].vectors[m]``. The joint
law is P(m) = |<m|Psi_c>|^2 / <Psi_c|Psi_c>; the sequential sampler draws one
qubit at a time from the conditional probabilities of the partially projected
state. Trajectory ``i`` of a run with master seed ``s`` draws from
``numpy.random.default_rng(SeedSequence(s, spawn_key=(i,)))``, the same
generators ``SeedSequence(s).spawn(n)`` hands out, so each trajectory is
reproducible on its own.
"""
import math
import threading
import warnings
from collections import OrderedDict
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from tccmap.codestate.vectors import ProductState, check_dense_cap, code_state
from tccmap.colex.types import Colex2, DualTriangulation
from tccmap.correspondence.identity import couplings_from_product_state, require_trivial_homology
from tccmap.exceptions import (
    DictionaryDomainException,
    HomologyObstruction,
    ImpossibleOutcome,
    InvalidParameter,
    LengthMismatch,
    NonOrthonormalBasis,
)
from tccmap.parallel import chunked_map, threads_wrapper
from tccmap.spinmodel.partition import partition_exact
from tccmap.utils import mask_from_indices, parity, relative_error

ORTHONORMAL_TOLERANCE = 1e-12
TENSOR_CACHE_STATES = 2


@dataclass(frozen=True, eq=False)
class MeasurementBasis:
    """Orthonormal single-qubit basis; outcome 0 is ``b0``, outcome 1 is ``b1``."""
    b0: np.ndarray
    b1: np.ndarray

    def __post_init__(self):
        b0 = np.asarray(self.b0, dtype=np.complex128).reshape(2)
        b1 = np.asarray(self.b1, dtype=np.complex128).reshape(2)
        gram = np.array([[np.vdot(a, b) for b in (b0, b1)] for a in (b0, b1)])
        if np.max(np.abs(gram - np.eye(2))) > ORTHONORMAL_TOLERANCE:
            raise NonOrthonormalBasis(
                f"Basis vectors are not orthonormal within {ORTHONORMAL_TOLERANCE}"
            )
        object.__setattr__(self, 'b0', b0)
        object.__setattr__(self, 'b1', b1)

    @classmethod
    def z(cls) -> 'MeasurementBasis':
        return cls(np.array([1, 0]), np.array([0, 1]))

    @classmethod
    def x(cls) -> 'MeasurementBasis':
        s = 1 / math.sqrt(2)
        return cls(np.array([s, s]), np.array([s, -s]))

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> 'MeasurementBasis':
        """Basis along the Bloch direction (theta, phi) and its antipode."""
        c, s = math.cos(theta / 2), math.sin(theta / 2)
        return cls(
            np.array([c, np.exp(1j * phi) * s]),
            np.array([-np.exp(-1j * phi) * s, c]),
        )

    def rows(self) -> np.ndarray:
        """Bra rows: rows()[m] @ psi_v = <b_m|psi_v>."""
        return np.conj(np.stack([self.b0, self.b1]))


Bases = Union[MeasurementBasis, Sequence[MeasurementBasis]]


def resolve_bases(bases: Bases, n: int) -> List[MeasurementBasis]:
    if isinstance(bases, MeasurementBasis):
        return [bases] * n
    bases = list(bases)
    if len(bases) != n:
        raise LengthMismatch(f"{len(bases)} measurement bases for {n} qubits")
    return bases


def _state_tensor(lattice: Colex2) -> np.ndarray:
    n = lattice.n_vertices
    check_dense_cap(n)
    return code_state(lattice).amplitudes.reshape((2,) * n)


def _axis(qubit: int, remaining: Sequence[int]) -> int:
    """Axis of ``qubit`` in a tensor over ``remaining`` qubits (highest qubit first)."""
    return sorted(remaining, reverse=True).index(qubit)


def _norm2(tensor: np.ndarray) -> float:
    return math.fsum((np.abs(tensor) ** 2).ravel().tolist())


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """Outcome probabilities; index bit ``v`` is the outcome of qubit ``v``."""
    n: int
    probabilities: np.ndarray

    def probability(self, bits: Sequence[int]) -> float:
        if len(bits) != self.n:
            raise LengthMismatch(f"{len(bits)} outcomes for {self.n} qubits")
        return float(self.probabilities[mask_from_indices(v for v, b in enumerate(bits) if b)])

    def marginal(self, keep: Sequence[int]) -> 'JointDistribution':
        """Distribution of the qubits in ``keep``, re-indexed in ascending order."""
        keep = sorted(keep)
        tensor = self.probabilities.reshape((2,) * self.n) if self.n else self.probabilities
        drop = tuple(self.n - 1 - v for v in range(self.n) if v not in keep)
        reduced = tensor.sum(axis=drop) if drop else tensor
        return JointDistribution(len(keep), np.asarray(reduced).reshape(-1))

    @property
    def total(self) -> float:
        return math.fsum(self.probabilities.tolist())


@threads_wrapper
def mqc_joint(lattice: Colex2, bases: Bases) -> JointDistribution:
    """P(m) over all 2^n outcome strings, from the dense code state."""
    n = lattice.n_vertices
    rows = resolve_bases(bases, n)
    tensor = _state_tensor(lattice)
    norm2 = _norm2(tensor)
    for v in range(n):
        axis = n - 1 - v
        tensor = np.moveaxis(np.tensordot(rows[v].rows(), tensor, axes=([1], [axis])), 0, axis)
    probs = (np.abs(tensor) ** 2).reshape(-1) / norm2
    return JointDistribution(n, probs)


@dataclass(frozen=True)
class OutcomeVector:
    """
    Outcomes of one sequential measurement run.

    ``bits[i]`` is the outcome of qubit ``order[i]``; ``conditionals[i]`` the
    probability it had given the earlier outcomes.
    """
    order: Tuple[int, ...]
    bits: Tuple[int, ...]
    probability: float
    conditionals: Tuple[float, ...]

    def outcome_bits(self, n: int) -> str:
        """Outcomes by qubit index, '-' for unmeasured qubits."""
        chars = ['-'] * n
        for v, b in zip(self.order, self.bits):
            chars[v] = str(b)
        return ''.join(chars)

    def as_dict(self) -> Dict[int, int]:
        return dict(zip(self.order, self.bits))


class _ProjectionTree:
    """
    Conditional probabilities of every outcome prefix, computed on demand
    from the normalized, partially projected dense state.

    Only the two branch probabilities are kept per visited prefix. Projected
    tensors live in a least recently used cache holding at most
    ``TENSOR_CACHE_STATES`` times the size of the full state; a prefix whose
    tensor was evicted is projected again from its nearest cached ancestor.
    """

    def __init__(self, lattice: Colex2, bases: List[MeasurementBasis], order: Sequence[int]):
        tensor = _state_tensor(lattice)
        self.root = tensor / math.sqrt(_norm2(tensor))
        self.bases = bases
        self.order = list(order)
        self.n = lattice.n_vertices
        self.branches: Dict[Tuple[int, ...], Tuple[float, float]] = {}
        self.tensors: 'OrderedDict[Tuple[int, ...], np.ndarray]' = OrderedDict()
        self.cache_bytes = TENSOR_CACHE_STATES * self.root.nbytes
        self.lock = threading.Lock()

    @property
    def cached_bytes(self) -> int:
        with self.lock:
            return sum(t.nbytes for t in self.tensors.values())

    def _remaining(self, depth: int) -> List[int]:
        return [v for v in range(self.n) if v not in self.order[:depth]]

    def _cached_ancestor(self, prefix: Tuple[int, ...]) -> Tuple[int, np.ndarray]:
        with self.lock:
            for depth in range(len(prefix), 0, -1):
                tensor = self.tensors.get(prefix[:depth])
                if tensor is not None:
                    self.tensors.move_to_end(prefix[:depth])
                    return depth, tensor
        return 0, self.root

    def _store(self, prefix: Tuple[int, ...], tensor: np.ndarray) -> None:
        if tensor.nbytes > self.cache_bytes:
            return
        with self.lock:
            self.tensors[prefix] = tensor
            self.tensors.move_to_end(prefix)
            used = sum(t.nbytes for t in self.tensors.values())
            while used > self.cache_bytes:
                _, evicted = self.tensors.popitem(last=False)
                used -= evicted.nbytes

    def tensor(self, prefix: Tuple[int, ...]) -> np.ndarray:
        """Normalized state after projecting the outcomes in ``prefix``."""
        start, tensor = self._cached_ancestor(prefix)
        for depth in range(start, len(prefix)):
            qubit = self.order[depth]
            row = self.bases[qubit].rows()[prefix[depth]]
            child = np.tensordot(row, tensor, axes=([0], [_axis(qubit, self._remaining(depth))]))
            norm2 = _norm2(child)
            if norm2 == 0:
                raise ImpossibleOutcome(
                    "Projection onto a zero-probability outcome", ("qubit", qubit)
                )
            tensor = child / math.sqrt(norm2)
            self._store(prefix[:depth + 1], tensor)
        return tensor

    def branch(self, prefix: Tuple[int, ...]) -> Tuple[float, float]:
        """Probabilities of outcomes 0 and 1 on the next qubit after ``prefix``."""
        with self.lock:
            probs = self.branches.get(prefix)
        if probs is not None:
            return probs
        depth = len(prefix)
        tensor = self.tensor(prefix)
        if depth == len(self.order):
            probs = (1.0, 0.0)
        else:
            qubit = self.order[depth]
            axis = _axis(qubit, self._remaining(depth))
            rows = self.bases[qubit].rows()
            q = [_norm2(np.tensordot(rows[m], tensor, axes=([0], [axis]))) for m in (0, 1)]
            total = q[0] + q[1]
            probs = (q[0] / total, q[1] / total)
        with self.lock:
            self.branches[prefix] = probs
        return probs


def trajectory_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _check_order(order: Sequence[int], n: int) -> List[int]:
    order = list(order)
    if len(set(order)) != len(order) or any(not 0 <= v < n for v in order):
        raise InvalidParameter(f"Measurement order must list distinct qubits below {n}")
    return order


def _draw(tree: _ProjectionTree, rng: np.random.Generator) -> OutcomeVector:
    prefix: Tuple[int, ...] = ()
    conditionals = []
    for qubit in tree.order:
        p0, p1 = tree.branch(prefix)
        m = 0 if rng.random() < p0 else 1
        p = (p0, p1)[m]
        if p == 0:
            raise ImpossibleOutcome("Sampled a zero-probability outcome", ("qubit", qubit))
        conditionals.append(p)
        prefix = prefix + (m,)
    probability = 1.0
    for p in conditionals:
        probability *= p
    return OutcomeVector(tuple(tree.order), prefix, probability, tuple(conditionals))


def iter_samples(lattice: Colex2, bases: Bases, order: Optional[Sequence[int]] = None,
                 seed: int = 0, n_samples: int = 1) -> Iterator[OutcomeVector]:
    """Stream of sequential measurement runs, one generator per trajectory."""
    n = lattice.n_vertices
    tree = _ProjectionTree(
        lattice, resolve_bases(bases, n), _check_order(range(n) if order is None else order, n)
    )
    for i in range(n_samples):
        yield _draw(tree, trajectory_rng(seed, i))


@threads_wrapper
def mqc_sample(lattice: Colex2, bases: Bases, order: Optional[Sequence[int]] = None,
               seed: int = 0, n_samples: int = 1) -> List[OutcomeVector]:
    """
    Sequential measurement runs. Trajectories are independent and evaluated
    in chunks; the result does not depend on the thread count.
    """
    n = lattice.n_vertices
    tree = _ProjectionTree(
        lattice, resolve_bases(bases, n), _check_order(range(n) if order is None else order, n)
    )
    chunks = chunked_map(
        lambda a, b: [_draw(tree, trajectory_rng(seed, i)) for i in range(a, b)],
        n_samples,
        chunk_size=4096,
    )
    return [s for chunk in chunks for s in chunk]


@dataclass(frozen=True)
class SubDual:
    """Triangulation dual to a set of measured colex vertices."""
    dual: DualTriangulation
    vertices: Tuple[int, ...]
    faces: Tuple[int, ...]


def sub_dual(colex: Colex2, measured: Sequence[int]) -> SubDual:
    """
    Sites are the faces touching the measured vertices, triangles the
    measured vertices (ascending), each joining its three faces.
    """
    vertices = tuple(sorted(set(measured)))
    measured_mask = mask_from_indices(vertices)
    faces = tuple(f for f, m in enumerate(colex.face_masks) if m & measured_mask)
    local = {f: i for i, f in enumerate(faces)}
    triangles = []
    for v in vertices:
        tri = sorted(colex.vertex_faces[v], key=lambda f: colex.faces[f].color)
        triangles.append(tuple(local[f] for f in tri))
    dual = DualTriangulation(
        tuple(colex.faces[f].color for f in faces), tuple(triangles), border=True  # type: ignore
    )
    return SubDual(dual, vertices, faces)


@dataclass(frozen=True)
class PartialMeasurementResult:
    dense: float
    dictionary: Optional[float]
    relative_error: Optional[float]
    fallback: bool
    reason: Optional[str] = None


def _project(lattice: Colex2, measured: Sequence[int], outcomes: Sequence[int],
             bases: List[MeasurementBasis]) -> np.ndarray:
    tensor = _state_tensor(lattice)
    remaining = list(range(lattice.n_vertices))
    for v, m in zip(measured, outcomes):
        row = bases[v].rows()[m]
        tensor = np.tensordot(row, tensor, axes=([0], [_axis(v, remaining)]))
        remaining.remove(v)
    return tensor


def _dictionary_value(lattice: Colex2, measured: Sequence[int], outcomes: Sequence[int],
                      bases: List[MeasurementBasis]) -> float:
    require_trivial_homology(lattice)
    by_vertex = dict(zip(measured, outcomes))
    sub = sub_dual(lattice, measured)
    coeffs = [bases[v].rows()[by_vertex[v]] for v in sub.vertices]
    phi = ProductState(np.array(coeffs).reshape(-1, 2))
    try:
        dictionary = couplings_from_product_state(phi, sub.dual)
    except DictionaryDomainException as exc:
        raise exc.with_annotation("vertex", sub.vertices[exc.index]) from None
    couplings = dictionary.couplings(sub.dual)
    local = {f: i for i, f in enumerate(sub.faces)}
    unmeasured = [v for v in range(lattice.n_vertices) if v not in by_vertex]
    scale = dictionary.prefactor / (2 ** sub.dual.n_sites)

    cache: Dict[int, complex] = {}
    squares = []
    for assignment in range(1 << len(unmeasured)):
        y = mask_from_indices(v for i, v in enumerate(unmeasured) if (assignment >> i) & 1)
        x_local = 0
        feasible = True
        for f, mask in enumerate(lattice.face_masks):
            if parity(y & mask):
                if f not in local:
                    feasible = False
                    break
                x_local |= 1 << local[f]
        if not feasible:
            continue
        if x_local not in cache:
            cache[x_local] = partition_exact(sub.dual, couplings, insertion=x_local)
        squares.append(abs(scale * cache[x_local]) ** 2)
    return math.fsum(squares)


def partial_measurement_partition(lattice: Colex2, measured: Sequence[int],
                                  outcomes: Sequence[int],
                                  bases: Bases) -> PartialMeasurementResult:
    """
    Squared norm of the code state projected onto outcomes on ``measured``.

    Evaluated densely, and as a sum over unmeasured basis states of squared
    complex-coupling partition functions on the triangulation dual to the
    measured vertices. Outside the coupling dictionary only the dense value
    is returned and ``fallback`` is set.
    """
    n = lattice.n_vertices
    if len(measured) != len(outcomes):
        raise LengthMismatch(f"{len(outcomes)} outcomes for {len(measured)} measured qubits")
    _check_order(measured, n)
    if any(m not in (0, 1) for m in outcomes):
        raise InvalidParameter("Outcomes must be 0 or 1")
    resolved = resolve_bases(bases, n)
    dense = _norm2(_project(lattice, measured, outcomes, resolved))
    try:
        value = _dictionary_value(lattice, measured, outcomes, resolved)
    except (DictionaryDomainException, HomologyObstruction) as exc:
        warnings.warn(f"Coupling dictionary unavailable, dense value only: {exc}", stacklevel=2)
        return PartialMeasurementResult(dense, None, None, True, str(exc))
    return PartialMeasurementResult(dense, value, relative_error(dense, value), False)
