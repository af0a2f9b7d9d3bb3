"""Ramification filtrations of elementary abelian p-extensions of p-adic fields."""

from .classify import ckp_degree, ckp_filtration, is_admissible, maus_check
from .construct import construct_extension, single_jump_block
from .fp_linalg import Subspace, span
from .mult_group import coordinates, kmodp, unit_level_image
from .padic_core import FieldSpec, RingElement, load_field, make_field
from .ramification import JumpSequence, filtration, jump_of_hyperplane, kummer_filtration, kummer_jump
from .units import decompose, find_omega_star, is_pth_power, zeta_p_in_K

__all__ = [
    "FieldSpec", "JumpSequence", "RingElement", "Subspace",
    "ckp_degree", "ckp_filtration", "construct_extension", "coordinates", "decompose",
    "filtration", "find_omega_star", "is_admissible", "is_pth_power", "jump_of_hyperplane",
    "kmodp", "kummer_filtration", "kummer_jump", "load_field", "make_field", "maus_check",
    "single_jump_block", "span", "unit_level_image", "zeta_p_in_K",
]
