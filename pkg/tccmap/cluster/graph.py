"""
Bipartite graph between colex vertices (part U1) and faces (part U2).

The cluster register holds U1 qubits first, then U2: vertex ``v`` is bit
``v`` and face ``f`` is bit ``n1 + f``, so a basis index reads
``gamma | (x << n1)``.
"""
from dataclasses import dataclass
from typing import Tuple

from tccmap.colex.types import Colex2
from tccmap.colex.validation import validate
from tccmap.exceptions import LatticeStructureException
from tccmap.typing import Mask


@dataclass(frozen=True)
class ClusterGraph:
    lattice: Colex2
    n1: int
    n2: int
    edges: Tuple[Tuple[int, int], ...]

    @property
    def n_qubits(self) -> int:
        return self.n1 + self.n2

    def face_qubit(self, face: int) -> int:
        return self.n1 + face

    def neighborhood(self, u: int) -> Mask:
        """Mask of N(u) = {u} and its neighbors, in register bits."""
        if u < self.n1:
            mask = 1 << u
            for f in self.lattice.vertex_faces[u]:
                mask |= 1 << self.face_qubit(f)
            return mask
        return (1 << u) | self.lattice.face_masks[u - self.n1]

    def degree(self, u: int) -> int:
        return bin(self.neighborhood(u)).count('1') - 1


def build_cluster_graph(lattice: Colex2) -> ClusterGraph:
    """
    One edge (v, f) for every vertex ``v`` kept by face ``f``; partial faces
    of a bordered colex join only their kept vertices.
    """
    report = validate(lattice)
    if not report.passed:
        raise LatticeStructureException(
            f"Cannot build a cluster graph on an invalid lattice: {', '.join(report.failures)}"
        )
    edges = tuple(
        (v, f) for f, face in enumerate(lattice.faces) for v in sorted(face.verts)
    )
    return ClusterGraph(lattice, lattice.n_vertices, lattice.n_faces, edges)
