"""
hilbertcone

Exact computations on rational polyhedral cones: support hyperplanes,
triangulations, multiplicities, Hilbert series and Hilbert bases.
"""

__version__ = "0.1.0"
__author__ = "hilbertcone developers"

# Import core modules for easy access
from hilbertcone.config import EngineConfig, load_config, save_config
from hilbertcone.data_module.bundled import example_text
from hilbertcone.data_module.input_parser import InputKind, ProblemSpec, Task, parse_input
from hilbertcone.engine_module.cone_engine import ConeEngine
from hilbertcone.engine_module.report import RunReport, emit, parse_report
from hilbertcone.errors import (
    ConfigurationError,
    ConsistencyError,
    DimensionError,
    HilbertConeError,
    ParseError,
    SingularMatrixError,
)

__all__ = [
    'ConeEngine',
    'ConfigurationError',
    'ConsistencyError',
    'DimensionError',
    'EngineConfig',
    'HilbertConeError',
    'InputKind',
    'ParseError',
    'ProblemSpec',
    'RunReport',
    'SingularMatrixError',
    'Task',
    'emit',
    'example_text',
    'load_config',
    'parse_input',
    'parse_report',
    'save_config',
]
