"""Finite quantales, frames and suplattices: presentations, ideal lattices of
finite commutative rings, reflections, principal elements, valuations and
tangent bundles."""

from .errors import QFError
from .lattice import FiniteLattice, build_lattice, classify, join_irreducibles, modular_pair, dual_modular_pair
from .suplattice import SupMorphism, normality_profile, right_adjoint, left_adjoint, totally_below, is_supercontinuous, dual_basis, downset_lattice
from .quantale import (
    FiniteQuantale,
    Nucleus,
    QuantaleHom,
    build_quantale,
    enumerate_homs,
    homs_to_D,
    localic_reflection,
    nucleus_quotient,
    primes,
    principal_profile,
    valuations,
)
from .presentation import Presentation, canonical_presentation, normalize, parse
from .saturation import saturate
from .coexp import coexp, dual_basis_of, largest_derivation, loc_coexp, tangent_report
from .rings import (
    FiniteCommRing,
    from_tables,
    ideal_quantale,
    localise_ring,
    localise_semiring,
    locally_principal_crosscheck,
    polyquot,
    prevaluations,
    primary_pairs,
    prime_spectrum,
    product,
    rad_frame,
    radical,
    zmod,
)
from .dot import emit_dot

__version__ = "0.1.0"
