"""
Dense state vectors.

Basis index ``b`` encodes qubit ``v`` in bit ``v``. All states are kept
un-normalized.
"""
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from tccmap.colex.types import Colex2
from tccmap.exceptions import CapExceeded, InvalidParameter, LengthMismatch
from tccmap.parallel import chunked_sum, threads_wrapper
from tccmap.pauli.operators import PauliOp
from tccmap.pauli.stabilizers import stabilizer_set
from tccmap.pauli.stringnets import boundary_group
from tccmap.settings import TCCMAP_DENSE_QUBIT_CAP
from tccmap.utils import sign_array


def check_dense_cap(n: int) -> None:
    if n > TCCMAP_DENSE_QUBIT_CAP:
        raise CapExceeded(
            f"{n} qubits exceed the dense state cap of {TCCMAP_DENSE_QUBIT_CAP}"
        )


@dataclass(frozen=True, eq=False)
class StateVector:
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        size = amps.shape[0] if amps.ndim == 1 else 0
        if size == 0 or size & (size - 1):
            raise LengthMismatch(f"State vector length {size} is not a power of two")
        object.__setattr__(self, 'amplitudes', amps)

    @property
    def n_qubits(self) -> int:
        return int(self.amplitudes.shape[0]).bit_length() - 1

    @threads_wrapper
    def norm2(self) -> float:
        amps = self.amplitudes
        return chunked_sum(lambda a, b: np.abs(amps[a:b]) ** 2, amps.shape[0]).real

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.amplitudes)

    def equals(self, other: 'StateVector', atol: float = 0.0) -> bool:
        if self.amplitudes.shape != other.amplitudes.shape:
            return False
        if atol == 0.0:
            return bool(np.array_equal(self.amplitudes, other.amplitudes))
        return bool(np.allclose(self.amplitudes, other.amplitudes, rtol=0.0, atol=atol))

    def to_bytes(self) -> bytes:
        """Little-endian complex128 amplitudes, index order."""
        return self.amplitudes.astype('<c16').tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> 'StateVector':
        return cls(np.frombuffer(data, dtype='<c16').astype(np.complex128))


@dataclass(frozen=True, eq=False)
class ProductState:
    """
    Product state with coefficients ``pairs[v] = (c0_v, c1_v)`` on qubit ``v``.
    """
    pairs: np.ndarray

    def __post_init__(self):
        pairs = np.asarray(self.pairs, dtype=np.complex128)
        if pairs.ndim != 2 or pairs.shape[1] != 2:
            raise InvalidParameter("Product state coefficients must have shape (n, 2)")
        if not np.all(np.isfinite(pairs)):
            raise InvalidParameter("Product state coefficients must be finite")
        zero = np.flatnonzero((pairs[:, 0] == 0) & (pairs[:, 1] == 0))
        if zero.size:
            raise InvalidParameter(
                "Both coefficients of a qubit vanish", ("qubit", int(zero[0]))
            )
        object.__setattr__(self, 'pairs', pairs)

    @property
    def n_qubits(self) -> int:
        return self.pairs.shape[0]

    @classmethod
    def from_pairs(cls, pairs: Sequence[Sequence[complex]]) -> 'ProductState':
        return cls(np.array(pairs, dtype=np.complex128).reshape(-1, 2))

    @classmethod
    def thermal(cls, n: int, beta_j: Union[complex, Sequence[complex]]) -> 'ProductState':
        """cosh(beta J_v)|0> + sinh(beta J_v)|1> on every qubit."""
        bj = np.broadcast_to(np.asarray(beta_j, dtype=np.complex128), (n,))
        return cls(np.stack([np.cosh(bj), np.sinh(bj)], axis=1))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> 'ProductState':
        pairs = rng.normal(size=(n, 2)) + 1j * rng.normal(size=(n, 2))
        return cls(pairs)

    def vector(self) -> np.ndarray:
        check_dense_cap(self.n_qubits)
        vec = np.ones(1, dtype=np.complex128)
        for c0, c1 in self.pairs:
            vec = np.concatenate([vec * c0, vec * c1])
        return vec


def code_state(lattice: Colex2) -> StateVector:
    """
    Un-normalized color code state: prod_f (1 + X_f) |0...0>.

    Amplitude 1 on every boundary string-net, 0 elsewhere.
    """
    n = lattice.n_vertices
    check_dense_cap(n)
    group = boundary_group(lattice)
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[group.elements().astype(np.int64)] = 1.0
    return StateVector(amps)


def apply_pauli(state: StateVector, op: PauliOp) -> StateVector:
    """X^x Z^z |psi>: Z bits apply signs, then X bits permute basis indices."""
    if op.n != state.n_qubits:
        raise LengthMismatch(f"Operator on {op.n} qubits, state has {state.n_qubits}")
    idx = np.arange(state.amplitudes.shape[0], dtype=np.uint64)
    signed = state.amplitudes * sign_array(idx, op.z)
    return StateVector(signed[(idx ^ np.uint64(op.x)).astype(np.int64)])


@threads_wrapper
def expectation(state: StateVector, op: PauliOp) -> complex:
    """<psi|P|psi> / <psi|psi>."""
    moved = apply_pauli(state, op).amplitudes
    amps = state.amplitudes
    num = chunked_sum(lambda a, b: np.conj(amps[a:b]) * moved[a:b], amps.shape[0])
    return num / state.norm2()


def hamiltonian_expectation(lattice: Colex2, state: Optional[StateVector] = None) -> float:
    """
    Energy of ``H = -sum_f (X_f + Z_f)`` with X on complete faces and Z on all faces.
    """
    if state is None:
        state = code_state(lattice)
    ops = stabilizer_set(lattice).ops()
    return -sum(expectation(state, op).real for op in ops)
