from hilbertcone.linalg_module.exact_linalg import (
    RationalSolveResult,
    as_int_matrix,
    as_int_vector,
    content,
    det,
    identity,
    invert,
    primitivize,
    rank,
    solve_multi_rhs,
    trigonalize,
    unimodular_echelon,
)
from hilbertcone.linalg_module.sublattice import Sublattice, kernel_lattice, span_lattice

__all__ = [
    'RationalSolveResult',
    'as_int_matrix',
    'as_int_vector',
    'content',
    'det',
    'identity',
    'invert',
    'primitivize',
    'rank',
    'solve_multi_rhs',
    'trigonalize',
    'unimodular_echelon',
    'Sublattice',
    'kernel_lattice',
    'span_lattice',
]
