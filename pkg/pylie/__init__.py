"""
pylie: exact computations with Lie algebras over the rationals, aimed at the
centralizers of nilpotent elements and their normalizers.

This package provides high-level utilities for:
- Exact rational matrices, kernels and binary-form gcds.
- Simple Lie algebras in a Chevalley basis and classical matrix algebras.
- sl2-triples, centralizers, centers and normalizers of nilpotent elements.
- Generic ranks of Kirillov matrices and the index of algebras and modules.
- Deciding Property (P) exactly for the bundled exceptional orbit catalog.
"""

# Import public API from submodules

from .errors import (
    PylieError, InputError, CatalogParseError, UnsupportedError, DataIntegrityError, PropertyViolation,
)
from .exactla import QMatrix, Frame, rational, rref, rank, kernel_basis, solve, poly_gcd_binary
from .liecore import (
    LieAlgebra, Element, Subspace, bracket, ad_matrix, killing, centralizer, center_of,
    normalizer, orthogonal, eigenspaces, check_jacobi,
)
from .chevalley import root_system, cartan_matrix, build_simple, weighted_dynkin
from .slice import (
    Sl2Triple, jacobson_morozov, is_regular, is_distinguished, parse_catalog, load_catalog,
    read_catalog, find_orbit, build_orbit, orbit_report, structure_checks,
)
from .classical import (
    realization, build_partition_nilpotent, zprime, dmatrix, special_center_element,
    verify_crochet, mprime_matrix, classical_suite,
)
from .index import VectorMatrix, LinearForm, kirillov, generic_rank, index_of, index_rep, de_matrix, verify_theorems, restrict_form
from .propp import (
    ParamMatrix, PVerdict, top_weight_space, structure_coeffs, surjective_all_nonzero, check_property_p,
)
from .config import set_env

__all__ = [
    'PylieError', 'InputError', 'CatalogParseError', 'UnsupportedError', 'DataIntegrityError', 'PropertyViolation',
    'QMatrix', 'Frame', 'rational', 'rref', 'rank', 'kernel_basis', 'solve', 'poly_gcd_binary',
    'LieAlgebra', 'Element', 'Subspace', 'bracket', 'ad_matrix', 'killing', 'centralizer', 'center_of',
    'normalizer', 'orthogonal', 'eigenspaces', 'check_jacobi',
    'root_system', 'cartan_matrix', 'build_simple', 'weighted_dynkin',
    'Sl2Triple', 'jacobson_morozov', 'is_regular', 'is_distinguished', 'parse_catalog', 'load_catalog',
    'read_catalog', 'find_orbit', 'build_orbit', 'orbit_report', 'structure_checks',
    'realization', 'build_partition_nilpotent', 'zprime', 'dmatrix', 'special_center_element',
    'verify_crochet', 'mprime_matrix', 'classical_suite',
    'VectorMatrix', 'LinearForm', 'kirillov', 'generic_rank', 'index_of', 'index_rep', 'de_matrix', 'verify_theorems', 'restrict_form',
    'ParamMatrix', 'PVerdict', 'top_weight_space', 'structure_coeffs', 'surjective_all_nonzero', 'check_property_p',
    'set_env',
]
