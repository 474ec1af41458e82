from hilbertcone.basis_module.hilbert_basis import (
    CandidatePool,
    global_reduce,
    hilbert_basis,
    is_reducible,
    is_reducible_in,
)

__all__ = [
    'CandidatePool',
    'global_reduce',
    'hilbert_basis',
    'is_reducible',
    'is_reducible_in',
]
