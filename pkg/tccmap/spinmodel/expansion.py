"""
High-temperature expansion.

With ``u = tanh(beta J)`` per triangle and ``u_i = tanh(beta h_i)`` per site,

    Z = 2^N * C * sum_delta prod_t u_t^delta_t * prod_i u_i^x_i(delta)

where ``C`` is the product of all cosh factors and ``x(delta)`` marks the
sites met by an odd number of triangles of the chain ``delta``. Without fields
only chains with ``x = 0`` survive, the group Delta_0.

The same sum, with colex vertices in place of triangles and faces in place of
sites, is the string-net expansion of the cluster-state overlap.
"""
import logging
from typing import Optional, Sequence

import numpy as np

from tccmap.colex.types import DualTriangulation
from tccmap.exceptions import CapExceeded, SingularCoupling
from tccmap.parallel import chunked_sum, threads_wrapper
from tccmap.pauli import gf2
from tccmap.settings import TCCMAP_SPAN_RANK_CAP
from tccmap.spinmodel.couplings import CouplingSet
from tccmap.typing import Mask

logger = logging.getLogger(__name__)

SINGULAR_TOLERANCE = 1e-12


def _chain_weights(chains: np.ndarray, u: np.ndarray) -> np.ndarray:
    weights = np.ones(chains.shape[0], dtype=np.complex128)
    for t, ut in enumerate(u):
        bit = ((chains >> np.uint64(t)) & np.uint64(1)).astype(bool)
        weights[bit] *= ut
    return weights


def _site_parities(chains: np.ndarray, site_masks: Sequence[Mask]) -> np.ndarray:
    x = np.zeros(chains.shape[0], dtype=np.uint64)
    for t, sites in enumerate(site_masks):
        bit = (chains >> np.uint64(t)) & np.uint64(1)
        x ^= bit * np.uint64(sites)
    return x


@threads_wrapper
def chain_expansion_sum(site_masks: Sequence[Mask], u_chain: np.ndarray,
                        u_site: Optional[np.ndarray] = None) -> complex:
    """
    sum_delta prod_t u_chain[t]^delta_t * prod_i u_site[i]^x_i(delta).

    Arguments
    ---------
    site_masks : Sequence[int]
        Sites of every chain element (triangle), as masks.
    u_chain : np.ndarray
        Weight of every chain element.
    u_site : np.ndarray, optional
        Weight of every site. None or all zero restricts the sum to the
        kernel Delta_0 of the site parity map.

    Returns
    -------
    complex
    """
    u_chain = np.asarray(u_chain, dtype=np.complex128)
    n_sites = max((m.bit_length() for m in site_masks), default=0)
    if u_site is None or not np.any(u_site):
        basis = gf2.kernel(site_masks, n_sites)
        if len(basis) > TCCMAP_SPAN_RANK_CAP:
            raise CapExceeded(
                f"Chain group rank {len(basis)} exceeds the enumeration cap {TCCMAP_SPAN_RANK_CAP}"
            )
        logger.debug("summing %d closed chains", 1 << len(basis))
        return chunked_sum(
            lambda a, b: _chain_weights(gf2.span_elements(basis, a, b), u_chain),
            1 << len(basis),
        )

    u_site = np.asarray(u_site, dtype=np.complex128)
    n_chain = len(site_masks)
    if n_chain > TCCMAP_SPAN_RANK_CAP:
        raise CapExceeded(
            f"{n_chain} chain elements exceed the enumeration cap {TCCMAP_SPAN_RANK_CAP}"
        )
    logger.debug("summing %d chains with site weights", 1 << n_chain)

    def terms(a, b):
        chains = np.arange(a, b, dtype=np.uint64)
        return _chain_weights(chains, u_chain) * _chain_weights(
            _site_parities(chains, site_masks), u_site
        )

    return chunked_sum(terms, 1 << n_chain)


def checked_tanh(values: np.ndarray, kind: str) -> np.ndarray:
    """tanh of every entry, rejecting the singular set cosh = 0."""
    cosh = np.cosh(values)
    bad = np.flatnonzero(np.abs(cosh) < SINGULAR_TOLERANCE)
    if bad.size:
        raise SingularCoupling(
            "cosh vanishes, the high-temperature weight is undefined", (kind, int(bad[0]))
        )
    return np.tanh(values)


def cosh_product(values: np.ndarray) -> complex:
    return complex(np.prod(np.cosh(np.asarray(values, dtype=np.complex128))))


@threads_wrapper
def partition_high_t(dual: DualTriangulation, couplings: CouplingSet) -> complex:
    """
    Partition function through the high-temperature expansion.

    Complex couplings take the principal branch of tanh.
    """
    couplings.check(dual)
    u_tri = checked_tanh(couplings.beta_j, 'triangle')
    u_site = checked_tanh(couplings.beta_h, 'site') if couplings.has_field else None
    prefactor = cosh_product(couplings.beta_j) * cosh_product(couplings.beta_h)
    total = chain_expansion_sum(dual.triangle_masks(), u_tri, u_site)
    return (2 ** dual.n_sites) * prefactor * total
