from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from tccmap.colex.types import DualTriangulation
from tccmap.exceptions import InvalidParameter, LengthMismatch
from tccmap.typing import Mask
from tccmap.utils import indices_from_mask, mask_from_indices


@dataclass(frozen=True)
class SpinConfig:
    """
    Spin configuration on ``n`` sites. Bit ``i`` set means sigma_i = -1.
    """
    n: int
    mask: Mask = 0

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.n:
            raise LengthMismatch(f"Spin configuration bits exceed {self.n} sites")

    @classmethod
    def from_spins(cls, spins: Sequence[int]) -> 'SpinConfig':
        if any(s not in (1, -1) for s in spins):
            raise InvalidParameter("Spins must be +1 or -1")
        return cls(len(spins), mask_from_indices(i for i, s in enumerate(spins) if s == -1))

    def spins(self) -> np.ndarray:
        return np.array([-1 if (self.mask >> i) & 1 else 1 for i in range(self.n)], dtype=np.int64)


@dataclass(frozen=True)
class TriangleChain:
    n: int
    mask: Mask = 0

    @property
    def triangles(self):
        return indices_from_mask(self.mask)

    def site_parity(self, dual: DualTriangulation) -> Mask:
        """Sites met by an odd number of the chain's triangles."""
        x = 0
        for t in self.triangles:
            for s in dual.triangles[t]:
                x ^= 1 << s
        return x


@dataclass(frozen=True, eq=False)
class CouplingSet:
    """
    3-body couplings ``J`` per triangle and fields ``h`` per site at inverse
    temperature ``beta``. Complex entries are allowed.
    """
    beta: float
    J: np.ndarray
    h: np.ndarray

    def __post_init__(self):
        J = np.atleast_1d(np.asarray(self.J, dtype=np.complex128))
        h = np.atleast_1d(np.asarray(self.h, dtype=np.complex128))
        if not (np.all(np.isfinite(J)) and np.all(np.isfinite(h)) and np.isfinite(self.beta)):
            raise InvalidParameter("Couplings, fields and beta must be finite")
        object.__setattr__(self, 'J', J)
        object.__setattr__(self, 'h', h)

    @classmethod
    def uniform(cls, dual: DualTriangulation, beta: float, J: Union[complex, float],
                h: Union[complex, float] = 0.0) -> 'CouplingSet':
        return cls(
            beta,
            np.full(dual.n_triangles, J, dtype=np.complex128),
            np.full(dual.n_sites, h, dtype=np.complex128),
        )

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.J.imag == 0) and np.all(self.h.imag == 0))

    @property
    def beta_j(self) -> np.ndarray:
        return self.beta * self.J

    @property
    def beta_h(self) -> np.ndarray:
        return self.beta * self.h

    @property
    def has_field(self) -> bool:
        return bool(np.any(self.h != 0))

    def check(self, dual: DualTriangulation) -> None:
        if self.J.shape[0] != dual.n_triangles:
            raise LengthMismatch(
                f"{self.J.shape[0]} couplings for {dual.n_triangles} triangles"
            )
        if self.h.shape[0] != dual.n_sites:
            raise LengthMismatch(f"{self.h.shape[0]} fields for {dual.n_sites} sites")
