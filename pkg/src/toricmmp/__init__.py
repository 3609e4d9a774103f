"""Exact toric minimal model program: fans, divisors, Mori cones, flips and cohomology."""

__version__ = "0.1.0"

from .divisor import Divisor, canonical_divisor, classify_pair, toric_boundary
from .fan import Cone, Fan, StarClosedSubset, build_fan, fan_from_indices
from .mmp import run_mmp
from .mori import NumericalLattice, is_ample, is_nef, is_projective, mori_cone

__all__ = [
    "Cone",
    "Divisor",
    "Fan",
    "NumericalLattice",
    "StarClosedSubset",
    "build_fan",
    "canonical_divisor",
    "classify_pair",
    "fan_from_indices",
    "is_ample",
    "is_nef",
    "is_projective",
    "mori_cone",
    "run_mmp",
    "toric_boundary",
]
