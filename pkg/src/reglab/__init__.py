"""reglab: periods, Gauss-Manin connections and real regulators of elliptic
fibrations with a cyclic automorphism."""

from .exact import Polynomial, RationalFunction, TruncatedSeries, extended_euclid, rational_residue
from .eisenstein import a_series, b_series, eisenstein_e3a, eisenstein_e3b
from .fibration import catalog, invariants, validate_conditions
from .gauss_manin import HyperellipticFamily, connection_matrix, weierstrass_connection
from .periods import eval_I, eval_J, period_table, quad_I, quad_J, verify_modular_identity
from .regulator import reg_value

__version__ = "0.1.0"

__all__ = [
    "Polynomial",
    "RationalFunction",
    "TruncatedSeries",
    "extended_euclid",
    "rational_residue",
    "a_series",
    "b_series",
    "eisenstein_e3a",
    "eisenstein_e3b",
    "catalog",
    "invariants",
    "validate_conditions",
    "HyperellipticFamily",
    "connection_matrix",
    "weierstrass_connection",
    "eval_I",
    "eval_J",
    "period_table",
    "quad_I",
    "quad_J",
    "verify_modular_identity",
    "reg_value",
]
