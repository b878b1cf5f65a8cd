"""Exact toric combinatorics, K-theoretic I-functions with effective level,
and checks of their q-difference equations and 3d mirror identity."""
from . import exactalg, ifunction, mirror, qseries, toric
from .errors import ToricMirrorError
from .ifunction import i_eff, i_eff_modified, i_eff_stack, i_function
from .mirror import diffeq_check, mirror_verify, uniqueness_recursion_check
from .toric import FixedPoint, ToricDatum, fixed_points, gale_dual, validate

__version__ = "0.1.0"

__all__ = [
    "exactalg", "toric", "qseries", "ifunction", "mirror", "ToricMirrorError",
    "ToricDatum", "FixedPoint", "validate", "gale_dual", "fixed_points",
    "i_function", "i_eff", "i_eff_modified", "i_eff_stack",
    "diffeq_check", "uniqueness_recursion_check", "mirror_verify",
]
