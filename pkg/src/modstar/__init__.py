"""mod-star congruence toolkit: G*_n, Schick sequences, square roots, density surveys, chord polynomials."""

from .arith import carmichael_lambda, euler_phi, factorize, moebius, primes_up_to
from .chordpoly import ChordIndex, cyclotomic_poly, p_poly, psi_poly, s_poly
from .group import (
    GroupStarSummary,
    ModStarResidue,
    canonical_repr,
    classify,
    congruent_star,
    element_order,
    group_elements,
    mul_star,
    primitive_roots_star,
)
from .density import artin_density_star, sg_density_star, sophie_germain_pairs
from .polynomial import IntPolynomial
from .quadratic import applicable_level, brute_sqrt_oracle, is_qr_star, partition, sqrt_star
from .sequences import generalized_sequence, pes, schick_absolute, schick_sequence, schick_signed

__version__ = "0.1.0"
