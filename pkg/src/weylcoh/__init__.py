"""Weyl algebra over F_p in divided powers, its Frobenius filtration, and
finite presentations of one-sided ideals."""

from .arith import FpConfig, FpScalar, binom_mod_p
from .chase import MatrixRep, level_of, matrix_of, operator_of, standard_basis
from .coherence import (
    Presentation,
    compare_with_oracle,
    present_left_ideal,
    present_right_ideal,
    same_syzygy_module,
    truncated_syzygy_oracle,
    verify_presentation,
)
from .groebner import ModuleOrder, ModuleVector, buchberger, module_syzygies, reduce
from .polyring import DEGREVLEX, LEX, MonomialOrder, Poly, frobenius_decompose, frobenius_recompose
from .textio import format_operator, parse_operator
from .weyl import WeylElement, weyl_apply, weyl_commutator, weyl_mul, weyl_transpose

__all__ = [
    "FpConfig", "FpScalar", "binom_mod_p",
    "Poly", "MonomialOrder", "DEGREVLEX", "LEX", "frobenius_decompose", "frobenius_recompose",
    "WeylElement", "weyl_mul", "weyl_apply", "weyl_commutator", "weyl_transpose",
    "MatrixRep", "level_of", "matrix_of", "operator_of", "standard_basis",
    "ModuleVector", "ModuleOrder", "reduce", "buchberger", "module_syzygies",
    "Presentation", "present_left_ideal", "present_right_ideal",
    "truncated_syzygy_oracle", "verify_presentation",
    "compare_with_oracle", "same_syzygy_module",
    "parse_operator", "format_operator",
]
