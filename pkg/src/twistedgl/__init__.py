"""Twisted point counts for squarefree polynomials and maximal tori over finite fields."""

from .braidcoh import ls_multiplicities, ls_multiplicity, stable_multiplicity
from .errors import TwistedGLError
from .ffpoly import field_of_order, make_field
from .glcount import lhs_conf_sum, rhs_conf_sum, verify_gl
from .lseries import weighted_L, residue_ratio, stable_coefficients
from .symcomb import CharacterPolynomial, ClassFunction, Partition, inner_product
from .toristat import tori_polynomial, tori_statistic

__version__ = "0.1.0"

__all__ = [
    "CharacterPolynomial",
    "ClassFunction",
    "Partition",
    "TwistedGLError",
    "field_of_order",
    "inner_product",
    "lhs_conf_sum",
    "ls_multiplicities",
    "ls_multiplicity",
    "make_field",
    "residue_ratio",
    "rhs_conf_sum",
    "stable_coefficients",
    "stable_multiplicity",
    "tori_polynomial",
    "tori_statistic",
    "verify_gl",
    "weighted_L",
]
