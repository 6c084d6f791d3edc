from dataclasses import dataclass

from tccmap.colex.types import Colex2
from tccmap.exceptions import InvalidParameter, LengthMismatch, RoleViolation
from tccmap.typing import Mask
from tccmap.utils import popcount


@dataclass(frozen=True)
class PauliOp:
    """
    Pauli operator in binary symplectic form, phases dropped.

    Bit ``v`` of ``x`` (``z``) set means an X (Z) factor on qubit ``v``.
    """
    n: int
    x: Mask = 0
    z: Mask = 0

    def __post_init__(self):
        if (self.x >> self.n) or (self.z >> self.n) or self.x < 0 or self.z < 0:
            raise LengthMismatch(f"Operator bits exceed {self.n} qubits")

    @classmethod
    def identity(cls, n: int) -> 'PauliOp':
        return cls(n)

    @property
    def weight(self) -> int:
        return popcount(self.x | self.z)

    def compose(self, other: 'PauliOp') -> 'PauliOp':
        _check_lengths(self, other)
        return PauliOp(self.n, self.x ^ other.x, self.z ^ other.z)

    def __str__(self):
        letters = []
        for v in range(self.n):
            bx, bz = (self.x >> v) & 1, (self.z >> v) & 1
            letters.append('IXZY'[bx + 2 * bz])
        return ''.join(letters)


def _check_lengths(a: PauliOp, b: PauliOp) -> None:
    if a.n != b.n:
        raise LengthMismatch(f"Operators act on {a.n} and {b.n} qubits")


def commutes(a: PauliOp, b: PauliOp) -> bool:
    """True iff the symplectic form <a.x, b.z> + <a.z, b.x> vanishes over GF(2)."""
    _check_lengths(a, b)
    return (popcount(a.x & b.z) + popcount(a.z & b.x)) % 2 == 0


def face_operator(lattice: Colex2, face: int, kind: str) -> PauliOp:
    """
    X- or Z-type face operator supported on the (kept) vertices of ``face``.

    Partial faces of a bordered colex only carry the Z role.
    """
    if not 0 <= face < lattice.n_faces:
        raise InvalidParameter(f"Face index out of range for {lattice.n_faces} faces")
    if kind not in ('X', 'Z'):
        raise InvalidParameter(f"Face operator kind must be 'X' or 'Z', got '{kind}'")
    mask = lattice.face_masks[face]
    if kind == 'X':
        if lattice.faces[face].partial:
            raise RoleViolation("Partial faces carry no X stabilizer", ("face", face))
        return PauliOp(lattice.n_vertices, x=mask)
    return PauliOp(lattice.n_vertices, z=mask)
