"""
String-nets and the color boundary operator.

A string-net is a set of colex vertices; its boundary marks the faces that
share an odd number of vertices with it. Boundary string-nets are sums of
complete-face vertex sets and form the group Gamma_0 that indexes the code
state. Partial faces count for the boundary map but never generate Gamma_0.
"""
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from tccmap.colex.types import Colex2
from tccmap.exceptions import CapExceeded, InvalidParameter, LengthMismatch
from tccmap.pauli import gf2
from tccmap.pauli.operators import PauliOp
from tccmap.settings import TCCMAP_SPAN_RANK_CAP
from tccmap.typing import Mask
from tccmap.utils import indices_from_mask, mask_from_indices, parity


@dataclass(frozen=True)
class StringNet:
    n: int
    gamma: Mask = 0

    def __post_init__(self):
        if self.gamma < 0 or self.gamma >> self.n:
            raise LengthMismatch(f"String-net bits exceed {self.n} vertices")

    @classmethod
    def from_vertices(cls, n: int, vertices: Sequence[int]) -> 'StringNet':
        return cls(n, mask_from_indices(vertices))

    @property
    def vertices(self) -> List[int]:
        return indices_from_mask(self.gamma)

    def x_operator(self) -> PauliOp:
        return PauliOp(self.n, x=self.gamma)

    def z_operator(self) -> PauliOp:
        return PauliOp(self.n, z=self.gamma)

    def __add__(self, other: 'StringNet') -> 'StringNet':
        if self.n != other.n:
            raise LengthMismatch(f"String-nets over {self.n} and {other.n} vertices")
        return StringNet(self.n, self.gamma ^ other.gamma)


@dataclass(frozen=True)
class FaceChain:
    n: int
    x: Mask = 0

    def __post_init__(self):
        if self.x < 0 or self.x >> self.n:
            raise LengthMismatch(f"Face chain bits exceed {self.n} faces")

    @classmethod
    def from_faces(cls, n: int, faces: Sequence[int]) -> 'FaceChain':
        return cls(n, mask_from_indices(faces))

    @classmethod
    def from_bitstring(cls, bits: str) -> 'FaceChain':
        """Bit ``i`` of the string is face ``i``."""
        if any(b not in '01' for b in bits):
            raise InvalidParameter(f"Face chain bitstring must be binary, got '{bits}'")
        return cls(len(bits), int(bits[::-1], 2) if bits else 0)

    @property
    def faces(self) -> List[int]:
        return indices_from_mask(self.x)

    def bitstring(self) -> str:
        return ''.join(str((self.x >> i) & 1) for i in range(self.n))


def _check_net(net: StringNet, lattice: Colex2) -> None:
    if net.n != lattice.n_vertices:
        raise LengthMismatch(
            f"String-net over {net.n} vertices, lattice has {lattice.n_vertices}"
        )


def face_net(lattice: Colex2, face: int) -> StringNet:
    return StringNet(lattice.n_vertices, lattice.face_masks[face])


def colored_string(lattice: Colex2, edges: Sequence[int]) -> StringNet:
    """
    String-net of a colored string: the sum of the endpoint pairs of ``edges``.
    """
    gamma = 0
    for idx in edges:
        edge = lattice.edges[idx]
        gamma ^= (1 << edge.a) ^ (1 << edge.b)
    return StringNet(lattice.n_vertices, gamma)


def boundary_mask(gamma: Mask, lattice: Colex2) -> Mask:
    x = 0
    for f, mask in enumerate(lattice.face_masks):
        if parity(gamma & mask):
            x |= 1 << f
    return x


def boundary(net: StringNet, lattice: Colex2) -> FaceChain:
    _check_net(net, lattice)
    return FaceChain(lattice.n_faces, boundary_mask(net.gamma, lattice))


def is_closed(net: StringNet, lattice: Colex2) -> bool:
    return boundary(net, lattice).x == 0


def is_boundary(net: StringNet, lattice: Colex2) -> Tuple[bool, Optional[FaceChain]]:
    """
    Decide whether ``net`` is a sum of complete-face vertex sets.

    Returns
    -------
    (True, witness) with the witness faces marked in a FaceChain, or
    (False, None).
    """
    _check_net(net, lattice)
    complete = lattice.complete_faces()
    combo = gf2.solve([lattice.face_masks[f] for f in complete], net.gamma, lattice.n_vertices)
    if combo is None:
        return False, None
    faces = [complete[i] for i in indices_from_mask(combo)]
    return True, FaceChain.from_faces(lattice.n_faces, faces)


def closed_basis(lattice: Colex2) -> List[Mask]:
    """GF(2) basis of all closed string-nets."""
    return gf2.nullspace(lattice.face_masks, lattice.n_vertices)


def homology_gap(lattice: Colex2) -> int:
    """Number of independent closed string-nets that are not boundaries."""
    return len(closed_basis(lattice)) - boundary_group(lattice).rank


class BoundaryGroup:
    """
    The group Gamma_0 of boundary string-nets and its cosets Gamma_x.

    Attributes
    ----------
    lattice : Colex2
        Host lattice.
    basis : List[int]
        Echelon basis of the span of complete-face vertex sets.
    rank : int
        Dimension of Gamma_0.
    """

    def __init__(self, lattice: Colex2) -> None:
        self.lattice = lattice
        masks = [lattice.face_masks[f] for f in lattice.complete_faces()]
        self.basis = gf2.row_basis(masks, lattice.n_vertices)
        self.rank = len(self.basis)

    @property
    def size(self) -> int:
        return 1 << self.rank

    def _check_cap(self) -> None:
        if self.rank > TCCMAP_SPAN_RANK_CAP:
            raise CapExceeded(
                f"Boundary group rank {self.rank} exceeds the enumeration cap "
                f"{TCCMAP_SPAN_RANK_CAP}"
            )

    def elements(self, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
        """Elements ``start..stop-1`` of Gamma_0 as uint64 vertex masks."""
        self._check_cap()
        return gf2.span_elements(self.basis, start, self.size if stop is None else stop)

    def __iter__(self) -> Iterator[StringNet]:
        self._check_cap()
        n = self.lattice.n_vertices
        for start in range(0, self.size, 1 << 16):
            for gamma in self.elements(start, min(self.size, start + (1 << 16))):
                yield StringNet(n, int(gamma))

    def __len__(self) -> int:
        return self.size

    def contains(self, net: StringNet) -> bool:
        return gf2.in_span(self.basis, net.gamma, self.lattice.n_vertices)

    def coset_representative(self, x: FaceChain) -> Optional[StringNet]:
        """
        One string-net with boundary ``x``, or None when Gamma_x is empty.
        """
        lattice = self.lattice
        if x.n != lattice.n_faces:
            raise LengthMismatch(f"Face chain over {x.n} faces, lattice has {lattice.n_faces}")
        columns = [lattice.vertex_face_mask(v) for v in range(lattice.n_vertices)]
        combo = gf2.solve(columns, x.x, lattice.n_faces)
        if combo is None:
            return None
        return StringNet(lattice.n_vertices, combo)


def boundary_group(lattice: Colex2) -> BoundaryGroup:
    return BoundaryGroup(lattice)
