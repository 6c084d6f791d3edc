"""
Cluster state on the vertex/face graph.

The state is fixed by X_{N(v)} = +1 for every vertex qubit and Z_{N(f)} = +1
for every face qubit. The all-zero state satisfies the Z conditions and the
X generators carry no Z part, so the state is the uniform sum over the span
of the X_{N(v)} supports: sum over all string-nets gamma of |gamma>|d gamma>.
"""
import logging
from typing import List, Tuple

import numpy as np

from tccmap.cluster.graph import ClusterGraph
from tccmap.codestate.vectors import StateVector, check_dense_cap
from tccmap.exceptions import ImpossibleOutcome, LatticePanic, LengthMismatch
from tccmap.pauli import gf2
from tccmap.pauli.operators import PauliOp, commutes
from tccmap.pauli.stringnets import FaceChain, boundary_group, closed_basis

logger = logging.getLogger(__name__)


def cluster_generators(graph: ClusterGraph) -> Tuple[List[PauliOp], List[PauliOp]]:
    """X_{N(v)} for vertex qubits and Z_{N(f)} for face qubits."""
    n = graph.n_qubits
    xs = [PauliOp(n, x=graph.neighborhood(v)) for v in range(graph.n1)]
    zs = [PauliOp(n, z=graph.neighborhood(graph.face_qubit(f))) for f in range(graph.n2)]
    return xs, zs


def cluster_state(graph: ClusterGraph) -> StateVector:
    n = graph.n_qubits
    check_dense_cap(n)
    xs, zs = cluster_generators(graph)
    for a in xs:
        for b in zs:
            if not commutes(a, b):
                raise LatticePanic(f"Cluster conditions {a} and {b} anticommute")
    basis = gf2.row_basis([op.x for op in xs], n)
    if len(basis) != graph.n1:
        raise LatticePanic(f"Cluster X conditions have rank {len(basis)}, expected {graph.n1}")
    logger.debug("cluster state on %d qubits, %d basis states", n, 1 << len(basis))
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[gf2.span_elements(basis, 0, 1 << len(basis)).astype(np.int64)] = 1.0
    return StateVector(amps)


def closed_form_cluster_state(graph: ClusterGraph) -> StateVector:
    """sum_x |x> (x) sum over Gamma_x of |gamma>, one coset per achievable x."""
    lattice = graph.lattice
    n = graph.n_qubits
    check_dense_cap(n)
    group = boundary_group(lattice)
    closed = closed_basis(lattice)
    nets = gf2.span_elements(closed, 0, 1 << len(closed))
    amps = np.zeros(1 << n, dtype=np.complex128)
    for x in range(1 << graph.n2):
        rep = group.coset_representative(FaceChain(graph.n2, x))
        if rep is None:
            continue
        idx = (nets ^ np.uint64(rep.gamma)) | np.uint64(x << graph.n1)
        amps[idx.astype(np.int64)] = 1.0
    return StateVector(amps)


def project_faces(graph: ClusterGraph, state: StateVector, x: FaceChain) -> StateVector:
    """
    Un-normalized state of the vertex qubits after reading ``x`` on the face
    qubits in the Z basis.
    """
    if state.n_qubits != graph.n_qubits:
        raise LengthMismatch(
            f"State on {state.n_qubits} qubits, cluster register has {graph.n_qubits}"
        )
    if x.n != graph.n2:
        raise LengthMismatch(f"Face chain over {x.n} faces, graph has {graph.n2}")
    start = x.x << graph.n1
    block = state.amplitudes[start:start + (1 << graph.n1)].copy()
    if not np.any(block):
        raise ImpossibleOutcome(
            f"Face outcome {x.bitstring()} has zero probability", ("faces", x.x)
        )
    return StateVector(block)
