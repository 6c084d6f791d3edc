"""
External-field overlap of the cluster state.

With the product state prod_v phi(beta J_v) prod_f phi(beta h_f), where
phi(s) = cosh s|0> + sinh s|1>, the overlap with the cluster state is

    O = C * sum_gamma prod_v u_v^gamma_v prod_f u_f^(d gamma)_f

with u = tanh and C the product of cosh factors. Through the dual
triangulation this is Z(beta, J, h) / 2^N for the 3-body model with a
field on every site.
"""
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from tccmap.cluster.graph import ClusterGraph, build_cluster_graph
from tccmap.cluster.state import cluster_state
from tccmap.codestate.overlap import overlap
from tccmap.codestate.vectors import ProductState
from tccmap.colex.dual import build_dual
from tccmap.colex.types import Colex2, DualTriangulation
from tccmap.correspondence.identity import (
    FieldIdentityResult,
    check_pair,
    require_trivial_homology,
)
from tccmap.exceptions import InvalidParameter, LengthMismatch
from tccmap.spinmodel.couplings import CouplingSet
from tccmap.spinmodel.expansion import chain_expansion_sum, checked_tanh, cosh_product
from tccmap.spinmodel.partition import partition_exact
from tccmap.utils import relative_error


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """Inverse temperature, coupling per colex vertex and field per colex face."""
    beta: float
    J: np.ndarray
    h: np.ndarray

    def __post_init__(self):
        J = np.asarray(self.J, dtype=np.float64).reshape(-1)
        h = np.asarray(self.h, dtype=np.float64).reshape(-1)
        if not (np.all(np.isfinite(J)) and np.all(np.isfinite(h)) and math.isfinite(self.beta)):
            raise InvalidParameter("Field specification must be finite")
        object.__setattr__(self, 'J', J)
        object.__setattr__(self, 'h', h)

    @classmethod
    def uniform(cls, graph: Union[ClusterGraph, Colex2], beta: float, J: float,
                h: float) -> 'FieldSpec':
        n1, n2 = _sizes(graph)
        return cls(beta, np.full(n1, J), np.full(n2, h))

    @classmethod
    def random(cls, graph: Union[ClusterGraph, Colex2], rng: np.random.Generator,
               beta: float = 1.0) -> 'FieldSpec':
        n1, n2 = _sizes(graph)
        return cls(beta, rng.uniform(-1, 1, n1), rng.uniform(-1, 1, n2))

    def check(self, graph: ClusterGraph) -> None:
        if self.J.shape[0] != graph.n1 or self.h.shape[0] != graph.n2:
            raise LengthMismatch(
                f"Fields for {self.J.shape[0]} vertices and {self.h.shape[0]} faces, "
                f"graph has {graph.n1} and {graph.n2}"
            )

    def as_dict(self) -> dict:
        return {'beta': self.beta, 'J': self.J.tolist(), 'h': self.h.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> 'FieldSpec':
        try:
            return cls(float(data['beta']), data['J'], data['h'])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidParameter(f"Malformed fields: {exc}")


def _sizes(graph: Union[ClusterGraph, Colex2]):
    if isinstance(graph, ClusterGraph):
        return graph.n1, graph.n2
    return graph.n_vertices, graph.n_faces


def field_product_state(graph: ClusterGraph, fields: FieldSpec) -> ProductState:
    fields.check(graph)
    s = fields.beta * np.concatenate([fields.J, fields.h])
    return ProductState(np.stack([np.cosh(s), np.sinh(s)], axis=1))


@dataclass(frozen=True)
class FieldOverlap:
    dense: complex
    expansion: complex
    relative_error: float

    @property
    def value(self) -> complex:
        return self.dense


def field_overlap(graph: ClusterGraph, fields: FieldSpec,
                  dense: bool = True) -> FieldOverlap:
    """
    Overlap of the cluster state with the field product state, densely and
    through the string-net expansion.
    """
    fields.check(graph)
    lattice = graph.lattice
    bj = fields.beta * fields.J
    bh = fields.beta * fields.h
    u_v = checked_tanh(bj.astype(np.complex128), 'vertex')
    u_f = checked_tanh(bh.astype(np.complex128), 'face')
    masks = [lattice.vertex_face_mask(v) for v in range(lattice.n_vertices)]
    expansion = cosh_product(bj) * cosh_product(bh) * chain_expansion_sum(masks, u_v, u_f)
    if not dense:
        return FieldOverlap(expansion, expansion, 0.0)
    value = overlap(cluster_state(graph), field_product_state(graph, fields))
    return FieldOverlap(value, expansion, relative_error(value, expansion))


def field_couplings(dual: DualTriangulation, fields: FieldSpec) -> CouplingSet:
    """J_t from the vertex dual to triangle t, h_i from the face dual to site i."""
    J = fields.J[np.asarray(dual.vertex_of_triangle, dtype=np.int64)]
    h = fields.h[np.asarray(dual.face_of_site, dtype=np.int64)]
    return CouplingSet(fields.beta, J, h)


def verify_field_identity(colex: Colex2, fields: FieldSpec,
                          dual: Optional[DualTriangulation] = None) -> FieldIdentityResult:
    """Z(beta, J, h) from exact enumeration against 2^N times the cluster overlap."""
    require_trivial_homology(colex)
    if dual is None:
        dual = build_dual(colex)
    check_pair(colex, dual)
    graph = build_cluster_graph(colex)
    fields.check(graph)
    z = partition_exact(dual, field_couplings(dual, fields))
    o = field_overlap(graph, fields).dense
    return FieldIdentityResult(
        z, o, dual.n_sites, relative_error(z, (2 ** dual.n_sites) * o)
    )
