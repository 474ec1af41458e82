"""
Plain text problem input.

    n d
    n rows of d integers
    gens | ineqs
    [equations m
     m rows of d integers]
    [grading
     d integers]

Blank lines and lines starting with '#' are ignored.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, Iterable, List, Optional, Tuple

import numpy as np

from hilbertcone.errors import ConfigurationError, ParseError
from hilbertcone.linalg_module.exact_linalg import as_int_matrix, primitivize

logger = logging.getLogger(__name__)


class InputKind(Enum):
    GENERATORS = "gens"
    INEQUALITIES = "ineqs"


class Task(Enum):
    SUPP = "supp"
    TRI = "tri"
    VOLUME = "volume"
    SERIES = "series"
    BASIS = "basis"
    DEG1 = "deg1"


ALL_TASKS: FrozenSet[Task] = frozenset(Task)
GRADED_TASKS: FrozenSet[Task] = frozenset({Task.VOLUME, Task.SERIES, Task.DEG1})
PARTIAL_TASKS: FrozenSet[Task] = frozenset({Task.SUPP, Task.BASIS, Task.DEG1})


@dataclass
class ProblemSpec:
    """
    A validated problem.

    Attributes:
        dim: Ambient dimension d.
        matrix: Generators or inequalities (rows), depending on ``kind``.
        kind: Input kind.
        equations: Rows of linear equations cutting the cone (may be empty).
        grading: Explicit primitive grading, or None.
        tasks: What to compute.
        tasks_explicit: False if ``tasks`` is the default selection.
    """
    dim: int
    matrix: np.ndarray
    kind: InputKind
    equations: np.ndarray = None
    grading: Optional[Tuple[int, ...]] = None
    tasks: FrozenSet[Task] = ALL_TASKS
    tasks_explicit: bool = False

    def __post_init__(self):
        if self.equations is None:
            self.equations = np.zeros((0, self.dim), dtype=object)
        if not self.tasks:
            raise ConfigurationError("task set is empty")

    def with_tasks(self, tasks: Iterable[Task]) -> "ProblemSpec":
        selected = frozenset(tasks)
        if not selected:
            return self
        return ProblemSpec(self.dim, self.matrix, self.kind, self.equations, self.grading,
                           selected, True)


class _Lines:
    """Significant lines with their 1-based line numbers."""

    def __init__(self, text: str):
        self.items: List[Tuple[int, str]] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if line and not line.startswith("#"):
                self.items.append((number, line))
        self.position = 0

    def next(self, expected: str) -> Tuple[int, str]:
        if self.position >= len(self.items):
            last = self.items[-1][0] if self.items else 0
            raise ParseError(f"unexpected end of input, expected {expected}", last)
        item = self.items[self.position]
        self.position += 1
        return item

    def done(self) -> bool:
        return self.position >= len(self.items)


def _integers(number: int, line: str, count: Optional[int], what: str) -> List[int]:
    try:
        values = [int(token) for token in line.split()]
    except ValueError:
        raise ParseError(f"{what}: non-integer entry in '{line}'", number) from None
    if count is not None and len(values) != count:
        raise ParseError(f"{what} has {len(values)} entries, expected {count}", number)
    return values


def _rows(lines: _Lines, n: int, d: int, what: str) -> np.ndarray:
    rows = []
    for index in range(n):
        number, line = lines.next(f"{what} {index + 1}")
        rows.append(_integers(number, line, d, f"{what} {index + 1}"))
    return as_int_matrix(rows) if rows else np.zeros((0, d), dtype=object)


def parse_input(text: str) -> ProblemSpec:
    """
    Parse problem text into a ProblemSpec.

    Raises:
        ParseError: malformed header, wrong row arity, unknown keyword or zero rows.
    """
    lines = _Lines(text)
    number, header = lines.next("header 'n d'")
    counts = _integers(number, header, 2, "header")
    n, d = counts
    if n <= 0:
        raise ParseError("input has zero rows", number)
    if d <= 0:
        raise ParseError(f"dimension {d} is not positive", number)
    matrix = _rows(lines, n, d, "row")

    number, keyword = lines.next("input kind 'gens' or 'ineqs'")
    try:
        kind = InputKind(keyword)
    except ValueError:
        raise ParseError(f"unknown input kind '{keyword}'", number) from None

    equations = np.zeros((0, d), dtype=object)
    grading = None
    while not lines.done():
        number, line = lines.next("block")
        words = line.split()
        if words[0] == "equations":
            if len(words) != 2:
                raise ParseError("expected 'equations m'", number)
            m = _integers(number, words[1], 1, "equations count")[0]
            if m < 0:
                raise ParseError(f"negative equation count {m}", number)
            equations = np.vstack([equations, _rows(lines, m, d, "equation")])
        elif words[0] == "grading":
            if grading is not None:
                raise ParseError("grading given twice", number)
            number, line = lines.next("grading row")
            values = _integers(number, line, d, "grading")
            if not any(values):
                raise ParseError("grading is zero", number)
            grading = tuple(int(a) for a in primitivize(values))
        else:
            raise ParseError(f"unknown block '{words[0]}'", number)

    logger.debug(f"Parsed {n} {kind.value} in dimension {d}, {len(equations)} equations")
    return ProblemSpec(d, matrix, kind, equations, grading)


def format_input(spec: ProblemSpec) -> str:
    """Inverse of parse_input (task selection is not part of the text)."""
    lines = [f"{spec.matrix.shape[0]} {spec.dim}"]
    lines += [" ".join(str(int(a)) for a in row) for row in spec.matrix]
    lines.append(spec.kind.value)
    if len(spec.equations):
        lines.append(f"equations {len(spec.equations)}")
        lines += [" ".join(str(int(a)) for a in row) for row in spec.equations]
    if spec.grading is not None:
        lines.append("grading")
        lines.append(" ".join(str(a) for a in spec.grading))
    return "\n".join(lines) + "\n"
