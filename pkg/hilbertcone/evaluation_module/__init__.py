from hilbertcone.evaluation_module.collector import EvaluationCollector
from hilbertcone.evaluation_module.order_vector import (
    Indicator,
    OrderVector,
    excluded_facets,
    indicator,
    resolve_nongeneric,
)
from hilbertcone.evaluation_module.simplicial_evaluator import (
    EvaluationTasks,
    ParallelotopePoints,
    SimplexResult,
    SimplicialEvaluator,
    degree1_points,
    evaluate_simplex,
    local_hilbert_candidates,
    parallelotope_points,
    pu_tests,
    reduce_mod_parallelotope,
    residue_reps,
    residue_system,
    semi_open_numerator,
    simplex_volume,
)

__all__ = [
    'EvaluationCollector',
    'EvaluationTasks',
    'Indicator',
    'OrderVector',
    'ParallelotopePoints',
    'SimplexResult',
    'SimplicialEvaluator',
    'degree1_points',
    'evaluate_simplex',
    'excluded_facets',
    'indicator',
    'local_hilbert_candidates',
    'parallelotope_points',
    'pu_tests',
    'reduce_mod_parallelotope',
    'residue_reps',
    'residue_system',
    'resolve_nongeneric',
    'semi_open_numerator',
    'simplex_volume',
]
