import enum
from dataclasses import dataclass
from typing import Optional, Tuple

from tccmap.colex.types import Colex2
from tccmap.exceptions import LatticePanic
from tccmap.pauli import gf2
from tccmap.pauli.operators import PauliOp, commutes, face_operator


class Role(enum.Enum):
    X_FACE = 'X'
    Z_FACE = 'Z'
    PARTIAL_Z = 'Z_partial'


@dataclass(frozen=True)
class Generator:
    op: PauliOp
    role: Role
    face: int


@dataclass(frozen=True)
class StabilizerSet:
    n: int
    generators: Tuple[Generator, ...]

    def ops(self, role: Optional[Role] = None) -> Tuple[PauliOp, ...]:
        return tuple(g.op for g in self.generators if role is None or g.role == role)

    @property
    def rank(self) -> int:
        rows = [(g.op.x << self.n) | g.op.z for g in self.generators]
        return gf2.rank(rows, 2 * self.n)


def stabilizer_set(lattice: Colex2) -> StabilizerSet:
    """
    Face stabilizers: X and Z on complete faces, Z only on partial faces.

    Raises LatticePanic when two generators anticommute, which can only
    happen for a lattice violating the colex invariants.
    """
    gens = []
    for f, face in enumerate(lattice.faces):
        if face.partial:
            gens.append(Generator(face_operator(lattice, f, 'Z'), Role.PARTIAL_Z, f))
        else:
            gens.append(Generator(face_operator(lattice, f, 'X'), Role.X_FACE, f))
            gens.append(Generator(face_operator(lattice, f, 'Z'), Role.Z_FACE, f))

    x_gens = [g for g in gens if g.role == Role.X_FACE]
    z_gens = [g for g in gens if g.role != Role.X_FACE]
    for a in x_gens:
        for b in z_gens:
            if not commutes(a.op, b.op):
                raise LatticePanic(
                    f"X stabilizer of face {a.face} anticommutes with "
                    f"Z stabilizer of face {b.face}."
                )
    return StabilizerSet(lattice.n_vertices, tuple(gens))


def encoded_qubits(lattice: Colex2) -> int:
    """
    Number of encoded qubits ``k = n - rank``.

    On closed colexes this equals ``4 - 2 * chi``; a mismatch is a lattice bug.
    """
    k = lattice.n_vertices - stabilizer_set(lattice).rank
    if lattice.closed and k != 4 - 2 * lattice.euler_characteristic:
        raise LatticePanic(
            f"Encoded qubit count {k} differs from 4 - 2*chi = "
            f"{4 - 2 * lattice.euler_characteristic}."
        )
    return k
