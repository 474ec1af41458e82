from hilbertcone.triangulation_module.simplicial_cone import (
    EvaluationBuffer,
    Pyramid,
    SimplicialCone,
    StrategyFlags,
    StrategyThresholds,
)
from hilbertcone.triangulation_module.triangulator import (
    Triangulator,
    inherit_det,
    triangulation_checksum,
)

__all__ = [
    'EvaluationBuffer',
    'Pyramid',
    'SimplicialCone',
    'StrategyFlags',
    'StrategyThresholds',
    'Triangulator',
    'inherit_det',
    'triangulation_checksum',
]
