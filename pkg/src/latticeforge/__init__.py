"""Quaternionic one-vertex cube complexes, doubling, congruence quotients,
and numerical certification of the cubical Ramanujan property."""

from .cubical import (CubeMorphism, check_link, compose, count_cubes,
                      cyclic_complex, double, face)
from .fields import MINUS_ONE, FieldCtx, SmallField, build_field_context
from .hurwitz import (GeneratorSet, Quaternion, enumerate_pa,
                      present_gamma_hurwitz, solve_square, verify_word_hurwitz)
from .presentation import (Direction, Presentation, canonicalize_square,
                           deserialize, serialize, validate)
from .quatff import (kl, place_coset, present_gamma_ff, present_lambda_ff,
                     verify_word_ff)
from .quotient import (CayleyComplex, SplittingData, build_cayley, split_ff,
                       split_hurwitz)
from .spectral import adjacency, ramanujan_report, spectrum

__version__ = "0.1.0"

__all__ = [
    "MINUS_ONE", "FieldCtx", "SmallField", "build_field_context",
    "kl", "place_coset", "present_gamma_ff", "present_lambda_ff", "verify_word_ff",
    "Quaternion", "GeneratorSet", "enumerate_pa", "solve_square",
    "present_gamma_hurwitz", "verify_word_hurwitz",
    "Direction", "Presentation", "canonicalize_square", "serialize",
    "deserialize", "validate",
    "CubeMorphism", "compose", "face", "count_cubes", "cyclic_complex",
    "check_link", "double",
    "CayleyComplex", "SplittingData", "split_ff", "split_hurwitz", "build_cayley",
    "adjacency", "spectrum", "ramanujan_report",
    "__version__",
]
