"""
Cone bookkeeping: linear forms, gradings and the incremental cone state.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

import numpy as np

from hilbertcone.errors import ConfigurationError, DimensionError, SingularMatrixError
from hilbertcone.linalg_module.exact_linalg import (
    as_int_matrix, as_int_vector, invert, primitivize, rank, solve_multi_rhs,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinearForm:
    """Primitive integral linear form; equality and hashing by coefficients."""
    coeffs: Tuple[int, ...]

    @classmethod
    def from_vector(cls, v, normalize: bool = True) -> "LinearForm":
        vector = primitivize(v) if normalize else as_int_vector(v)
        return cls(tuple(int(a) for a in vector))

    @cached_property
    def vector(self) -> np.ndarray:
        return as_int_vector(self.coeffs)

    def __call__(self, x) -> int:
        return int(sum(a * int(b) for a, b in zip(self.coeffs, x)))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __str__(self):
        return " ".join(str(a) for a in self.coeffs)


@dataclass
class Grading:
    """
    A grading together with the degrees of the current generators.

    Attributes:
        form: Primitive linear form, positive on every nonzero generator.
        degrees: Degree of each generator, in generator order.
        implicit: True if the form was derived from the extreme rays.
    """
    form: LinearForm
    degrees: List[int] = field(default_factory=list)
    implicit: bool = False

    @classmethod
    def for_generators(cls, form: LinearForm, generators: np.ndarray,
                       implicit: bool = False) -> "Grading":
        degrees = [int(v) for v in generators.dot(form.vector)] if len(generators) else []
        for index, degree in enumerate(degrees):
            if degree <= 0:
                raise ConfigurationError(
                    f"grading {form} is not positive on generator {index} "
                    f"({list(generators[index])}): degree {degree}")
        return cls(form, degrees, implicit)

    def degree(self, x) -> int:
        return self.form(x)


@dataclass
class ConeState:
    """
    State of the incremental cone C_i = cone(x_1, ..., x_i).

    ``zero_sets[k]`` is a bitmask over generator positions: bit j is set iff
    the k-th hyperplane vanishes on generator j. ``incidence`` holds the
    same information as a boolean matrix for vectorized subset tests.
    """
    generators: np.ndarray
    processed_count: int = 0
    hyperplanes: List[LinearForm] = field(default_factory=list)
    zero_sets: List[int] = field(default_factory=list)
    extreme_flags: List[bool] = field(default_factory=list)
    incidence: Optional[np.ndarray] = None

    @property
    def dim(self) -> int:
        return self.generators.shape[1]

    @property
    def size(self) -> int:
        return self.generators.shape[0]

    def hyperplane_matrix(self) -> np.ndarray:
        """Current support forms as the rows of an integer matrix (0 x d if there are none)."""
        if not self.hyperplanes:
            return np.zeros((0, self.dim), dtype=object)
        return as_int_matrix([h.coeffs for h in self.hyperplanes])

    def reset_hyperplanes(self, forms: Sequence[LinearForm], upto: int) -> None:
        """Install ``forms`` and recompute zero sets over positions 0, ..., upto-1."""
        self.hyperplanes = list(forms)
        previous = self.generators[:upto]
        self.zero_sets = []
        for form in self.hyperplanes:
            mask = 0
            for j, value in enumerate(previous.dot(form.vector)):
                if value == 0:
                    mask |= 1 << j
            self.zero_sets.append(mask)
        self.processed_count = max(self.processed_count, upto)
        self.rebuild_incidence()

    def rebuild_incidence(self) -> None:
        """Recompute ``incidence`` from the ``zero_sets`` bitmasks."""
        matrix = np.zeros((len(self.hyperplanes), self.size), dtype=bool)
        for k, mask in enumerate(self.zero_sets):
            j = 0
            while mask:
                if mask & 1:
                    matrix[k, j] = True
                mask >>= 1
                j += 1
        self.incidence = matrix


def first_independent_indices(generators: np.ndarray, order: Optional[Sequence[int]] = None) -> List[int]:
    """
    Lexicographically smallest index vector of rank(generators) independent rows.

    The rows are scanned in ``order`` and kept whenever they raise the rank.
    """
    positions = list(order) if order is not None else list(range(generators.shape[0]))
    pivots: List[Tuple[int, np.ndarray]] = []
    chosen: List[int] = []
    d = generators.shape[1]
    for index in positions:
        v = as_int_vector(generators[index])
        for column, row in pivots:
            if v[column] != 0:
                v = v * row[column] - row * v[column]
        nonzero = np.flatnonzero(v != 0)
        if len(nonzero) == 0:
            continue
        v = primitivize(v)
        pivots.append((int(nonzero[0]), v))
        chosen.append(index)
        if len(chosen) == d:
            break
    return chosen


def initial_simplex_hyperplanes(G) -> List[LinearForm]:
    """
    Support forms of the simplicial cone spanned by the rows of ``G``.

    The i-th form vanishes on every row except row i and is positive there.
    """
    matrix = as_int_matrix(G)
    try:
        inverse = invert(matrix)
    except SingularMatrixError:
        raise SingularMatrixError("initial generators are linearly dependent")
    return [LinearForm.from_vector(inverse.column(i)) for i in range(matrix.shape[0])]


def partition(hyperplanes: Sequence[LinearForm], x) -> Tuple[list, list, list]:
    """Split ``hyperplanes`` by the sign of their value on ``x``."""
    neg, zero, pos = [], [], []
    for form in hyperplanes:
        value = form(x)
        if value < 0:
            neg.append(form)
        elif value == 0:
            zero.append(form)
        else:
            pos.append(form)
    return neg, zero, pos


def height(form: LinearForm, x) -> int:
    """Lattice height of ``x`` over the hyperplane of ``form``."""
    return abs(form(x))


def extreme_rays(state: ConeState) -> List[bool]:
    """
    Flag the generators spanning extreme rays.

    A generator is extreme iff the hyperplanes vanishing on it have rank
    d - 1. Of several generators on the same ray only the first is flagged.
    """
    d = state.dim
    forms = state.hyperplane_matrix()
    flags: List[bool] = []
    seen_rays = set()
    for x in state.generators:
        values = forms.dot(x) if len(forms) else np.zeros(0, dtype=object)
        vanishing = forms[values == 0]
        extreme = len(vanishing) >= d - 1 and rank(vanishing) == d - 1
        if extreme:
            ray = tuple(int(a) for a in primitivize(x))
            if ray in seen_rays:
                extreme = False
            else:
                seen_rays.add(ray)
        flags.append(bool(extreme))
    state.extreme_flags = flags
    return flags


def detect_pointed(state: ConeState) -> bool:
    """True iff the support forms span the dual space."""
    return rank(state.hyperplane_matrix()) == state.dim


def implicit_grading(extreme_generators) -> Optional[Grading]:
    """
    The grading giving every extreme integral generator the same degree.

    Args:
        extreme_generators: Primitive extreme integral generators, one per row.

    Returns:
        Grading with primitive form, or None if no such form exists.
    """
    rays = as_int_matrix(extreme_generators)
    if rays.shape[0] == 0:
        return None
    d = rays.shape[1]
    basis = first_independent_indices(rays)
    if len(basis) < d:
        raise DimensionError(f"extreme rays span only {len(basis)} of {d} dimensions")
    ones = as_int_vector([1] * d)
    result = solve_multi_rhs(rays[basis], ones)
    form = LinearForm.from_vector(result.column(0))
    values = set(int(v) for v in rays.dot(form.vector))
    if len(values) != 1 or min(values) <= 0:
        logger.debug("Extreme rays do not lie in one hyperplane; no implicit grading")
        return None
    return Grading.for_generators(form, rays, implicit=True)
