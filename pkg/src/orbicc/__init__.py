"""Snake-graph expansions and Caldero-Chapoton maps for triangulated
orbifolds with order-3 orbifold points."""

from .laurent import LaurentPolynomial, canonical_text
from .orbifold import build_gentle_pair, read_orbifold_file
from .strings import BandWord, StringWord, parse_word
from .ccmap import cc_prin, g_vector, snake_expansion, verify_cc_equals_expansion

__all__ = [
    "LaurentPolynomial",
    "canonical_text",
    "build_gentle_pair",
    "read_orbifold_file",
    "BandWord",
    "StringWord",
    "parse_word",
    "cc_prin",
    "g_vector",
    "snake_expansion",
    "verify_cc_equals_expansion",
]
