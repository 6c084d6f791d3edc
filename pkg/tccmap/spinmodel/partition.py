"""
Exact partition functions of 3-body Ising models by full enumeration.

Z = sum_sigma exp(beta * sum_t J_t s_t + beta * sum_i h_i sigma_i) with
``s_t`` the product of the three spins of triangle ``t``.
"""
import logging

import numpy as np

from tccmap.colex.types import DualTriangulation
from tccmap.exceptions import CapExceeded, LengthMismatch
from tccmap.parallel import chunked_sum, threads_wrapper
from tccmap.settings import TCCMAP_SITE_ENUMERATION_CAP
from tccmap.spinmodel.couplings import CouplingSet, SpinConfig
from tccmap.typing import Mask
from tccmap.utils import sign_array

logger = logging.getLogger(__name__)


def check_site_cap(dual: DualTriangulation) -> None:
    if dual.n_sites > TCCMAP_SITE_ENUMERATION_CAP:
        raise CapExceeded(
            f"{dual.n_sites} sites exceed the enumeration cap of {TCCMAP_SITE_ENUMERATION_CAP}"
        )


def energy(config: SpinConfig, dual: DualTriangulation, couplings: CouplingSet) -> complex:
    """H = -sum_i h_i sigma_i - sum_t J_t sigma_i sigma_j sigma_k."""
    if config.n != dual.n_sites:
        raise LengthMismatch(f"Configuration on {config.n} sites, lattice has {dual.n_sites}")
    couplings.check(dual)
    spins = config.spins()
    total = -complex(np.dot(couplings.h, spins))
    for t, (i, j, k) in enumerate(dual.triangles):
        total -= couplings.J[t] * int(spins[i] * spins[j] * spins[k])
    return total


def exponents(masks: np.ndarray, dual: DualTriangulation, couplings: CouplingSet) -> np.ndarray:
    """-beta * H for every configuration mask in ``masks``."""
    out = np.zeros(masks.shape[0], dtype=np.complex128)
    for t, tri_mask in enumerate(dual.triangle_masks()):
        bj = couplings.beta_j[t]
        if bj != 0:
            out += bj * sign_array(masks, tri_mask)
    for i, bh in enumerate(couplings.beta_h):
        if bh != 0:
            out += bh * sign_array(masks, 1 << i)
    return out


@threads_wrapper
def partition_exact(dual: DualTriangulation, couplings: CouplingSet,
                    insertion: Mask = 0) -> complex:
    """
    Sum of the Boltzmann weights over all 2^N configurations.

    Arguments
    ---------
    dual : DualTriangulation
        Lattice with at most ``TCCMAP_SITE_ENUMERATION_CAP`` sites.
    couplings : CouplingSet
        Couplings and fields, complex allowed.
    insertion : int, optional
        Mask of sites whose spins multiply every weight, giving the
        correlator numerator sum_sigma prod_{i in x} sigma_i exp(-beta H).

    Returns
    -------
    complex
    """
    check_site_cap(dual)
    couplings.check(dual)
    n = dual.n_sites
    if insertion == 0 and not np.any(couplings.beta_j) and not np.any(couplings.beta_h):
        return complex(2 ** n)

    logger.debug("enumerating %d configurations", 1 << n)

    def terms(a, b):
        masks = np.arange(a, b, dtype=np.uint64)
        weights = np.exp(exponents(masks, dual, couplings))
        if insertion:
            weights *= sign_array(masks, insertion)
        return weights

    return chunked_sum(terms, 1 << n)
