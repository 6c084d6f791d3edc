"""
Z2 x Z2 color symmetry and ground states of the uniform 3-body model.

Flipping every spin of two colors leaves each triangle product unchanged.
For J > 0 the ground states are the color-uniform configurations labelled by
the positive parity tags (f_r, f_g, f_b) with f_r f_g f_b = +1, and for J < 0
by the negative tags.
"""
from typing import List, Tuple, Union

import numpy as np

from tccmap.colex.types import Color, DualTriangulation
from tccmap.exceptions import ColoringException, InvalidParameter, LengthMismatch
from tccmap.parallel import chunked_map, threads_wrapper
from tccmap.spinmodel.couplings import SpinConfig
from tccmap.spinmodel.partition import check_site_cap
from tccmap.utils import bit_parity_array, mask_from_indices

Tag = Tuple[int, int, int]

POSITIVE_PARITY_TAGS: Tuple[Tag, ...] = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))
NEGATIVE_PARITY_TAGS: Tuple[Tag, ...] = tuple(
    (-a, -b, -c) for a, b, c in POSITIVE_PARITY_TAGS  # type: ignore
)


def _check_colored(dual: DualTriangulation) -> None:
    if not dual.is_three_colored():
        raise ColoringException("Every triangle needs one site of each color")


def parity_tag_config(dual: DualTriangulation, tag: Tag) -> SpinConfig:
    """Configuration with sigma_i = tag[color(i)]."""
    if any(s not in (1, -1) for s in tag) or len(tag) != 3:
        raise InvalidParameter(f"Parity tag must be three signs, got {tag}")
    return SpinConfig(
        dual.n_sites,
        mask_from_indices(i for i, c in enumerate(dual.colors) if tag[c] == -1),
    )


def color_flip(config: SpinConfig, dual: DualTriangulation, s_r: int, s_g: int) -> SpinConfig:
    """sigma_i -> s(color(i)) sigma_i with s_b = s_r * s_g."""
    if s_r not in (1, -1) or s_g not in (1, -1):
        raise InvalidParameter(f"Color flip signs must be +1 or -1, got ({s_r}, {s_g})")
    if config.n != dual.n_sites:
        raise LengthMismatch(f"Configuration on {config.n} sites, lattice has {dual.n_sites}")
    _check_colored(dual)
    flip = {Color.RED: s_r, Color.GREEN: s_g, Color.BLUE: s_r * s_g}
    mask = mask_from_indices(i for i, c in enumerate(dual.colors) if flip[c] == -1)
    return SpinConfig(config.n, config.mask ^ mask)


def _sign(sign_of_j: Union[int, str]) -> int:
    if sign_of_j in (1, '+'):
        return 1
    if sign_of_j in (-1, '-'):
        return -1
    raise InvalidParameter(f"Coupling sign must be +1 or -1, got {sign_of_j!r}")


@threads_wrapper
def ground_states(dual: DualTriangulation, sign_of_j: Union[int, str]) -> List[SpinConfig]:
    """
    All minimum-energy configurations of H = -J sum_t s_t at zero field, by
    exhaustive integer enumeration.
    """
    sign = _sign(sign_of_j)
    check_site_cap(dual)
    _check_colored(dual)
    tri_masks = dual.triangle_masks()

    def best(a, b):
        masks = np.arange(a, b, dtype=np.uint64)
        score = np.zeros(b - a, dtype=np.int64)
        for tm in tri_masks:
            score += 1 - 2 * bit_parity_array(masks, tm).astype(np.int64)
        score *= sign
        top = int(score.max())
        return top, masks[score == top].tolist()

    chunks = chunked_map(best, 1 << dual.n_sites)
    top = max(score for score, _ in chunks)
    return [
        SpinConfig(dual.n_sites, int(m))
        for score, masks in chunks if score == top
        for m in masks
    ]
