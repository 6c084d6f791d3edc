"""
Code-state overlaps as 3-body Ising partition functions.

On a bordered colex whose closed string-nets are all boundaries,

    Z(beta J) = 2^N <Psi_c | Phi(beta J)>

with N the number of dual sites (= colex faces) and |Phi> the product of
cosh(beta J)|0> + sinh(beta J)|1>. A general product state maps to complex
couplings beta J_v = artanh(c1_v / c0_v) up to an explicit prefactor.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from tccmap.codestate.overlap import overlap
from tccmap.codestate.vectors import ProductState, code_state
from tccmap.colex.dual import build_dual
from tccmap.colex.types import Colex2, DualTriangulation
from tccmap.exceptions import DictionaryDomainException, HomologyObstruction, LengthMismatch
from tccmap.pauli.stringnets import homology_gap
from tccmap.spinmodel.couplings import CouplingSet
from tccmap.spinmodel.partition import partition_exact
from tccmap.utils import relative_error

BRANCH_TOLERANCE = 1e-12


@dataclass(frozen=True)
class OverlapIdentityResult:
    beta_j: float
    partition: complex
    overlap: complex
    n_sites: int
    relative_error: float

    @property
    def scaled_overlap(self) -> complex:
        return (2 ** self.n_sites) * self.overlap

    def passed(self, tolerance: float = 1e-10) -> bool:
        return self.relative_error < tolerance


@dataclass(frozen=True, eq=False)
class CouplingDictionary:
    """
    Complex couplings per triangle and the prefactor making
    ``overlap = prefactor * Z / 2^N`` an equality.
    """
    beta_j: np.ndarray
    prefactor: complex

    def couplings(self, dual: DualTriangulation) -> CouplingSet:
        return CouplingSet(1.0, self.beta_j, np.zeros(dual.n_sites, dtype=np.complex128))


def require_trivial_homology(colex: Colex2) -> None:
    """
    Raise HomologyObstruction unless every closed string-net is a boundary.
    """
    gap = homology_gap(colex)
    if colex.closed or gap:
        raise HomologyObstruction(
            f"{gap} independent closed string-nets are not boundaries; "
            f"the overlap identity needs a bordered lattice without homology"
        )


def check_pair(colex: Colex2, dual: DualTriangulation) -> None:
    if colex.n_vertices != dual.n_triangles or colex.n_faces != dual.n_sites:
        raise LengthMismatch(
            f"Colex with {colex.n_vertices} vertices and {colex.n_faces} faces is not dual to "
            f"a triangulation with {dual.n_triangles} triangles and {dual.n_sites} sites"
        )


def verify_overlap_identity(colex: Colex2, beta_j: float,
                            dual: Optional[DualTriangulation] = None) -> OverlapIdentityResult:
    """
    Compare the exact partition function with 2^N times the code-state overlap.
    """
    require_trivial_homology(colex)
    if dual is None:
        dual = build_dual(colex)
    check_pair(colex, dual)
    z = partition_exact(dual, CouplingSet.uniform(dual, 1.0, beta_j))
    o = overlap(code_state(colex), ProductState.thermal(colex.n_vertices, beta_j))
    return OverlapIdentityResult(
        beta_j, z, o, dual.n_sites, relative_error(z, (2 ** dual.n_sites) * o)
    )


def couplings_from_product_state(phi: ProductState, dual: DualTriangulation) -> CouplingDictionary:
    """
    beta J_t = artanh(c1_v / c0_v) for the vertex v dual to triangle t, and
    prefactor prod_v c0_v / cosh(beta J_v).
    """
    if phi.n_qubits != dual.n_triangles:
        raise LengthMismatch(
            f"Product state on {phi.n_qubits} qubits, lattice has {dual.n_triangles} triangles"
        )
    c0, c1 = phi.pairs[:, 0], phi.pairs[:, 1]
    zero = np.flatnonzero(c0 == 0)
    if zero.size:
        raise DictionaryDomainException(
            "Coefficient c0 vanishes, no coupling reproduces this qubit", ("vertex", int(zero[0]))
        )
    ratios = c1 / c0
    cut = np.flatnonzero(np.minimum(np.abs(ratios - 1), np.abs(ratios + 1)) < BRANCH_TOLERANCE)
    if cut.size:
        raise DictionaryDomainException(
            "Coefficient ratio is +-1, artanh diverges", ("vertex", int(cut[0]))
        )
    beta_j_vertex = np.arctanh(ratios.astype(np.complex128))
    prefactor = complex(np.prod(c0 / np.cosh(beta_j_vertex)))
    beta_j = beta_j_vertex[np.asarray(dual.vertex_of_triangle, dtype=np.int64)]
    return CouplingDictionary(beta_j, prefactor)


@dataclass(frozen=True)
class FieldIdentityResult:
    """Both sides of Z(beta, J, h) = 2^N O(beta, J, h)."""
    partition: complex
    overlap: complex
    n_sites: int
    relative_error: float

    @property
    def scaled_overlap(self) -> complex:
        return (2 ** self.n_sites) * self.overlap

    def passed(self, tolerance: float = 1e-10) -> bool:
        return self.relative_error < tolerance
