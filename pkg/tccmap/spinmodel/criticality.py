"""
Transfer-matrix estimates for the 3-body model on triangular strips, and
the self-duality of the coupling.

A strip of width ``W`` (a multiple of 3, periodic across) is built row by
row. Between rows ``s`` and ``s'`` the up triangles contribute
``s_c s_{c+1} s'_{c+1}`` and the down triangles ``s_c s'_c s'_{c+1}``.
"""
import logging
import math
import warnings
from dataclasses import dataclass
from types import MappingProxyType
from typing import List, Optional, Sequence, Tuple

import numpy as np

from tccmap.colex.types import Color, DualTriangulation
from tccmap.exceptions import (
    CapExceeded,
    ColoringException,
    ConvergenceException,
    InvalidParameter,
)
from tccmap.parallel import chunked_map, threads_wrapper
from tccmap.settings import TCCMAP_TRANSFER_WIDTH_CAP

logger = logging.getLogger(__name__)

MAX_ITERATIONS = 10000
EIGEN_TOLERANCE = 1e-14
HEAT_STEP = 1e-3
DENSE_EIGEN_SIZE = 1024
DEFAULT_GRID = (0.25, 0.75, 51)

# Literature values, stored for reference and never computed here.
REFERENCE_CONSTANTS = MappingProxyType({
    'source': 'literature',
    'K_c': 0.4407,
    'triangular': MappingProxyType({'alpha': 2 / 3, 'nu': 2 / 3, 'beta': 1 / 12, 'eta': 1 / 4}),
    'union_jack': MappingProxyType({'alpha': 1 / 2}),
})


def _check_width(width: int) -> None:
    if width > TCCMAP_TRANSFER_WIDTH_CAP:
        raise CapExceeded(
            f"Strip width {width} exceeds the transfer matrix cap {TCCMAP_TRANSFER_WIDTH_CAP}"
        )
    if width < 3 or width % 3:
        raise ColoringException(
            f"Strip width {width} admits no 3-coloring: width must be a positive multiple of 3"
        )


def _row_spins(width: int) -> np.ndarray:
    idx = np.arange(1 << width)[:, None]
    bits = (idx >> np.arange(width)[None, :]) & 1
    return 1 - 2 * bits


def transfer_matrix(width: int, beta_j: float) -> np.ndarray:
    """Row-to-row transfer matrix T[s, s'] = exp(K * E(s, s'))."""
    _check_width(width)
    spins = _row_spins(width).astype(np.float64)
    pairs = spins * np.roll(spins, -1, axis=1)
    energy = pairs @ np.roll(spins, -1, axis=1).T + spins @ pairs.T
    return np.exp(beta_j * energy)


def _dominant(matrix: np.ndarray,
              start: Optional[np.ndarray] = None) -> Tuple[float, Optional[np.ndarray]]:
    """
    Perron eigenvalue of a positive matrix. Full spectrum up to
    DENSE_EIGEN_SIZE rows, warm-started power iteration above.
    """
    if matrix.shape[0] <= DENSE_EIGEN_SIZE:
        return float(np.max(np.abs(np.linalg.eigvals(matrix)))), start
    v = np.full(matrix.shape[0], 1.0) if start is None else start.copy()
    v /= np.linalg.norm(v)
    lam = 0.0
    settled = 0
    for _ in range(MAX_ITERATIONS):
        w = matrix @ v
        new_lam = float(np.linalg.norm(w))
        w /= new_lam
        if abs(new_lam - lam) <= EIGEN_TOLERANCE * new_lam and np.max(np.abs(w - v)) < 1e-13:
            settled += 1
            if settled == 3:
                return new_lam, w
        else:
            settled = 0
        v, lam = w, new_lam
    raise ConvergenceException(
        f"Power iteration did not converge within {MAX_ITERATIONS} iterations"
    )


def _free_energy(width: int, beta_j: float,
                 start: Optional[np.ndarray] = None) -> Tuple[float, Optional[np.ndarray]]:
    lam, vec = _dominant(transfer_matrix(width, beta_j), start)
    return math.log(lam) / width, vec


def transfer_matrix_free_energy(width: int, beta_j: float) -> float:
    """log of the dominant eigenvalue per site, for the infinitely long strip."""
    return _free_energy(width, beta_j)[0]


def _specific_heat(width: int, beta_j: float, start: Optional[np.ndarray] = None,
                   step: float = HEAT_STEP) -> Tuple[float, float, Optional[np.ndarray]]:
    f_minus, vec = _free_energy(width, beta_j - step, start)
    f_mid, vec = _free_energy(width, beta_j, vec)
    f_plus, vec = _free_energy(width, beta_j + step, vec)
    heat = beta_j ** 2 * (f_plus - 2 * f_mid + f_minus) / step ** 2
    return heat, f_mid, vec


def specific_heat(width: int, beta_j: float, step: float = HEAT_STEP) -> float:
    """Specific heat per site, K^2 d^2f/dK^2 by centered second difference."""
    return _specific_heat(width, beta_j, step=step)[0]


def strip_torus_dual(width: int, length: int) -> DualTriangulation:
    """
    Closed triangulation summed by Tr T^length: sites (r, c) at index
    r * width + c, colored (r + c) mod 3, periodic in both directions.
    """
    _check_width(width)
    if length < 3 or length % 3:
        raise ColoringException(
            f"Strip length {length} admits no periodic 3-coloring, use a multiple of 3"
        )

    def site(r, c):
        return (r % length) * width + c % width

    colors = tuple(Color((r + c) % 3) for r in range(length) for c in range(width))
    triangles = []
    for r in range(length):
        for c in range(width):
            for tri in (
                (site(r, c), site(r, c + 1), site(r + 1, c + 1)),
                (site(r, c), site(r + 1, c), site(r + 1, c + 1)),
            ):
                triangles.append(tuple(sorted(tri, key=lambda s: colors[s])))
    return DualTriangulation(colors, tuple(triangles))  # type: ignore


def transfer_trace_partition(width: int, length: int, beta_j: float) -> float:
    """Tr T^length: the exact partition function of the width x length torus."""
    if length < 1:
        raise InvalidParameter(f"Strip length must be positive, got {length}")
    return float(np.trace(np.linalg.matrix_power(transfer_matrix(width, beta_j), length)))


def locate_specific_heat_peak(
    width: int, grid: Tuple[float, float, int] = DEFAULT_GRID
) -> Tuple[float, List[Tuple[int, float, float, float]]]:
    """
    Specific heat maximum of one strip: grid scan, then golden-section
    refinement between the neighbours of the best grid point.

    Returns
    -------
    (peak coupling, rows of (width, betaJ, free_energy, specific_heat))
    """
    _check_width(width)
    lo, hi, count = grid
    rows = []
    vec = None
    for k in np.linspace(lo, hi, count):
        heat, f, vec = _specific_heat(width, float(k), vec)
        rows.append((width, float(k), f, heat))
    best = max(range(len(rows)), key=lambda i: rows[i][3])
    if best in (0, len(rows) - 1):
        warnings.warn(
            f"Specific heat of width {width} peaks at the grid edge {rows[best][1]}", stacklevel=2
        )
    a = rows[max(best - 1, 0)][1]
    b = rows[min(best + 1, len(rows) - 1)][1]
    invphi = (math.sqrt(5) - 1) / 2
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    hc, hd = specific_heat(width, c), specific_heat(width, d)
    while b - a > 1e-5:
        if hc > hd:
            b, d, hd = d, c, hc
            c = b - invphi * (b - a)
            hc = specific_heat(width, c)
        else:
            a, c, hc = c, d, hd
            d = a + invphi * (b - a)
            hd = specific_heat(width, d)
    logger.debug("width %d: specific heat peak at %.6f", width, (a + b) / 2)
    return (a + b) / 2, rows


@dataclass(frozen=True)
class CriticalityReport:
    widths: Tuple[int, ...]
    peaks: Tuple[float, ...]
    extrapolated_kc: Optional[float]
    rows: Tuple[Tuple[int, float, float, float], ...]
    reference = REFERENCE_CONSTANTS

    def drifts_toward(self, target: float) -> bool:
        distances = [abs(p - target) for p in self.peaks]
        return all(a >= b for a, b in zip(distances, distances[1:]))


@threads_wrapper
def criticality_scan(widths: Sequence[int],
                     grid: Tuple[float, float, int] = DEFAULT_GRID) -> CriticalityReport:
    """
    Specific heat peaks for several strip widths, run concurrently, and an
    extrapolated critical coupling from a linear fit of the peaks against
    W^(-1/nu) with the reference nu.
    """
    widths = sorted(widths)
    for w in widths:
        _check_width(w)
    if widths and widths[0] == 3:
        warnings.warn("Width 3 strips are far from the scaling regime", stacklevel=2)
    results = chunked_map(
        lambda a, b: locate_specific_heat_peak(widths[a], grid), len(widths), chunk_size=1
    )
    peaks = tuple(p for p, _ in results)
    rows = tuple(r for _, table in results for r in table)
    kc = None
    if len(widths) >= 2:
        nu = REFERENCE_CONSTANTS['triangular']['nu']
        xs = np.array(widths, dtype=np.float64) ** (-1 / nu)
        kc = float(np.polyfit(xs, np.array(peaks), 1)[1])
    return CriticalityReport(tuple(widths), peaks, kc, rows)


def critical_coupling() -> float:
    """Root of sinh(2K) = 1 by Newton iteration."""
    k = 0.5
    for _ in range(100):
        step = (math.sinh(2 * k) - 1) / (2 * math.cosh(2 * k))
        k -= step
        if abs(step) < 1e-16:
            break
    return k


def dual_coupling(beta_j: float) -> float:
    """K* with exp(-2 K*) = tanh K. The self-dual point solves sinh 2K = 1."""
    if beta_j <= 0:
        raise InvalidParameter(f"Dual coupling needs K > 0, got {beta_j}")
    return -0.5 * math.log(math.tanh(beta_j))
