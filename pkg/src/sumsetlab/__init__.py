"""Verification toolkit for sumset inequalities on integer lattices."""

from .constants import c_of_p, conjugate, cube_upper_exponent, q_hypercube, tau
from .lattice import FiniteFunction, LatticeSet, cube, enumerate_nonempty_subsets, lp_norm
from .sumsets import (
    additive_energy,
    dilated_sum,
    iterated_sum,
    minkowski_sum,
    representation_counts,
)
from .supconv import (
    SequenceFamily,
    compress_to_1d,
    general_lhs,
    general_rhs,
    prekopa_weights,
    prop01_check,
    rearrange_decreasing,
    six_point_gap,
    sup_convolution,
    weighted_max_sum_lhs,
    weighted_rhs,
)

__version__ = "0.1.0"
