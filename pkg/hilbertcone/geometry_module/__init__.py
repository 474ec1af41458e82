from hilbertcone.geometry_module.cone_state import (
    ConeState,
    Grading,
    LinearForm,
    detect_pointed,
    extreme_rays,
    first_independent_indices,
    height,
    implicit_grading,
    initial_simplex_hyperplanes,
    partition,
)
from hilbertcone.geometry_module.fourier_motzkin import (
    dualize_inequalities,
    find_new_hyp,
    pyramid_supported_hyperplanes,
    start_state,
    support_hyperplanes,
)

__all__ = [
    'ConeState',
    'Grading',
    'LinearForm',
    'detect_pointed',
    'extreme_rays',
    'first_independent_indices',
    'height',
    'implicit_grading',
    'initial_simplex_hyperplanes',
    'partition',
    'dualize_inequalities',
    'find_new_hyp',
    'pyramid_supported_hyperplanes',
    'start_state',
    'support_hyperplanes',
]
