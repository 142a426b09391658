"""Visible points of a lattice, their density, and the Bragg part of their diffraction."""

__version__ = "0.1.0"

from .diffraction import (
    BraggAmplitude,
    PatchSum,
    RationalWaveVector,
    bragg_amplitude,
    bragg_map,
    closed_f,
    closed_f_exact,
    convergence_study,
    dirichlet_f,
    dirichlet_tail_bound,
    fold_to_cell,
    reduce_wavevector,
    structure_factor_patch,
)
from .lattice import (
    Lattice,
    UnimodularMatrix,
    apply_automorphism,
    enumerate_box,
    gl2_generators,
    make_lattice,
    square_lattice,
)
from .numtheory import (
    MobiusTable,
    gcd_many,
    is_squarefree,
    lcm_many,
    mobius,
    sieve_mobius,
    zeta_euler_product,
    zeta_even_closed,
    zeta_partial,
)
from .visibility import (
    DensityEstimate,
    density_curve,
    empirical_density,
    enumerate_visible,
    is_visible,
    partition_check,
    visibility_level,
    visible_from_observers,
)

__all__ = [
    "BraggAmplitude",
    "PatchSum",
    "RationalWaveVector",
    "bragg_amplitude",
    "bragg_map",
    "closed_f",
    "closed_f_exact",
    "convergence_study",
    "dirichlet_f",
    "dirichlet_tail_bound",
    "fold_to_cell",
    "reduce_wavevector",
    "structure_factor_patch",
    "Lattice",
    "UnimodularMatrix",
    "apply_automorphism",
    "enumerate_box",
    "gl2_generators",
    "make_lattice",
    "square_lattice",
    "MobiusTable",
    "gcd_many",
    "is_squarefree",
    "lcm_many",
    "mobius",
    "sieve_mobius",
    "zeta_euler_product",
    "zeta_even_closed",
    "zeta_partial",
    "DensityEstimate",
    "density_curve",
    "empirical_density",
    "enumerate_visible",
    "is_visible",
    "partition_check",
    "visibility_level",
    "visible_from_observers",
]
