import math
from typing import Iterable, Iterator, List, Tuple

import numpy as np

from tccmap.typing import Mask

try:
    from Crypto.Hash import keccak
    keccak256 = lambda x: keccak.new(digest_bits=256, data=x).digest()  # noqa: E731
except ImportError:
    import sha3 as _sha3
    keccak256 = lambda x: _sha3.keccak_256(x).digest()  # noqa: E731


def popcount(mask: Mask) -> int:
    return bin(mask).count('1')


def parity(mask: Mask) -> int:
    return popcount(mask) & 1


def mask_from_indices(indices: Iterable[int]) -> Mask:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def indices_from_mask(mask: Mask) -> List[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def bit_parity_array(values: np.ndarray, mask: Mask) -> np.ndarray:
    """
    Parity of ``values & mask`` for every entry of an unsigned integer array.
    """
    acc = np.zeros(values.shape, dtype=np.uint64)
    for i in indices_from_mask(mask):
        acc ^= (values >> np.uint64(i)) & np.uint64(1)
    return acc


def sign_array(values: np.ndarray, mask: Mask) -> np.ndarray:
    """(-1) ** parity(values & mask) as float64."""
    return 1.0 - 2.0 * bit_parity_array(values, mask).astype(np.float64)


def fsum_complex(values: Iterable[complex]) -> complex:
    """
    Exactly rounded sum of complex values.

    Real and imaginary parts are summed separately with ``math.fsum``, so the
    result does not depend on the order of the terms.
    """
    arr = np.asarray(values, dtype=np.complex128)
    return complex(math.fsum(arr.real.tolist()), math.fsum(arr.imag.tolist()))


def chunk_ranges(total: int, chunk_size: int) -> Iterator[Tuple[int, int]]:
    start = 0
    while start < total:
        stop = min(start + chunk_size, total)
        yield start, stop
        start = stop


def relative_error(reference: complex, value: complex) -> float:
    """|reference - value| / |reference|, or the absolute error when reference is 0."""
    scale = abs(reference)
    if scale == 0:
        return abs(value)
    return abs(reference - value) / scale


def format_real(value: float) -> str:
    return format(float(value), '.17g')
