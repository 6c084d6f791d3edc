import numpy as np

from tccmap.codestate.vectors import ProductState, StateVector
from tccmap.colex.types import Colex2
from tccmap.exceptions import LengthMismatch, MappingDomainException
from tccmap.parallel import chunked_sum, threads_wrapper
from tccmap.pauli.stringnets import boundary_group


@threads_wrapper
def overlap(state: StateVector, phi: ProductState) -> complex:
    """
    sum_b conj(state_b) prod_v c_v^{b_v}.

    The code state is real in the computational basis, so the conjugation
    only matters for general states.
    """
    if phi.n_qubits != state.n_qubits:
        raise LengthMismatch(
            f"Product state on {phi.n_qubits} qubits, state has {state.n_qubits}"
        )
    amps = state.amplitudes
    vec = phi.vector()
    return chunked_sum(lambda a, b: np.conj(amps[a:b]) * vec[a:b], amps.shape[0])


def _ratio_weights(elements: np.ndarray, ratios: np.ndarray) -> np.ndarray:
    weights = np.ones(elements.shape[0], dtype=np.complex128)
    for v, r in enumerate(ratios):
        bit = ((elements >> np.uint64(v)) & np.uint64(1)).astype(bool)
        weights[bit] *= r
    return weights


@threads_wrapper
def string_net_overlap(lattice: Colex2, phi: ProductState) -> complex:
    """
    prod_v c0_v * sum over Gamma_0 of prod_{v in gamma} c1_v / c0_v.

    Same value as ``overlap(code_state(lattice), phi)`` without the dense vector.
    """
    if phi.n_qubits != lattice.n_vertices:
        raise LengthMismatch(
            f"Product state on {phi.n_qubits} qubits, lattice has {lattice.n_vertices}"
        )
    c0 = phi.pairs[:, 0]
    zero = np.flatnonzero(c0 == 0)
    if zero.size:
        raise MappingDomainException(
            "Coefficient c0 vanishes, use the dense overlap", ("vertex", int(zero[0]))
        )
    ratios = phi.pairs[:, 1] / c0
    group = boundary_group(lattice)
    total = chunked_sum(
        lambda a, b: _ratio_weights(group.elements(a, b), ratios), group.size
    )
    return complex(np.prod(c0)) * total
