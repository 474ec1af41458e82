from hilbertcone.data_module.bundled import (
    EXAMPLES,
    cross_polytope,
    cyclotomic_pairs,
    example_text,
    magic_squares,
    toy23,
    unit_cone,
)
from hilbertcone.data_module.input_parser import (
    ALL_TASKS,
    GRADED_TASKS,
    PARTIAL_TASKS,
    InputKind,
    ProblemSpec,
    Task,
    format_input,
    parse_input,
)

__all__ = [
    'ALL_TASKS',
    'EXAMPLES',
    'GRADED_TASKS',
    'InputKind',
    'PARTIAL_TASKS',
    'ProblemSpec',
    'Task',
    'cross_polytope',
    'cyclotomic_pairs',
    'example_text',
    'format_input',
    'magic_squares',
    'parse_input',
    'toy23',
    'unit_cone',
]
