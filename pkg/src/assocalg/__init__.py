"""Exact-arithmetic toolkit for finite-dimensional associative algebras over
the Gaussian rationals, with a catalog of the indecomposable algebras of
dimensions 2-4 and a harness that recomputes their tabulated invariants."""

from .algebra import (
    Algebra,
    change_basis,
    direct_sum,
    format_algebra,
    is_associative,
    make_algebra,
    parse_algebra,
    power_chain,
)
from .catalog import builtin_catalog, get_entry, instantiate, verify_all, verify_entry
from .exactnum import Matrix, Scalar, Subspace, parse_matrix, parse_scalar
from .invariants import fingerprint, radical
from .morphisms import is_automorphism, is_homomorphism, search_isomorphism

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "Matrix",
    "Scalar",
    "Subspace",
    "builtin_catalog",
    "change_basis",
    "direct_sum",
    "fingerprint",
    "format_algebra",
    "get_entry",
    "instantiate",
    "is_associative",
    "is_automorphism",
    "is_homomorphism",
    "make_algebra",
    "parse_algebra",
    "parse_matrix",
    "parse_scalar",
    "power_chain",
    "radical",
    "search_isomorphism",
    "verify_all",
    "verify_entry",
]
