"""
Evaluation of single simplicial cones.

For a simplicial cone sigma with generator matrix G (rows v_1, ..., v_d)
this computes the lattice points E of the semi-open parallelotope, the
facets excluded by the order vector, and from these the contributions to
volume, Hilbert series, degree-1 points and Hilbert basis candidates.
Linear systems are solved lazily: a potentially unimodular sigma is tried
with the indicator system alone, trigonalization and the residue system
follow only for nonunimodular sigma, and the support-form system only
when the indicator has zero entries.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from hilbertcone.errors import ConsistencyError
from hilbertcone.evaluation_module.order_vector import (
    Indicator, OrderVector, excluded_facets, resolve_nongeneric,
)
from hilbertcone.linalg_module.exact_linalg import (
    RationalSolveResult, as_int_matrix, as_int_vector, det, solve_multi_rhs, trigonalize,
)
from hilbertcone.triangulation_module.simplicial_cone import SimplicialCone

logger = logging.getLogger(__name__)

INT64_SAFE = 2 ** 62


@dataclass
class EvaluationTasks:
    volume: bool = False
    series: bool = False
    basis: bool = False
    deg1: bool = False
    verify: bool = False

    @property
    def needs_points(self) -> bool:
        return self.series or self.basis or self.deg1


@dataclass(eq=False)
class ParallelotopePoints:
    """
    Lattice points of par(v_1, ..., v_d).

    ``coords[j] / denom`` are the coordinates of ``points[j]`` with respect
    to v_1, ..., v_d, all in [0, 1).
    """
    points: List[np.ndarray]
    coords: List[np.ndarray]
    denom: int
    degrees: Optional[List[int]] = None

    def __len__(self) -> int:
        return len(self.points)


@dataclass
class SimplexResult:
    key: Tuple[int, ...]
    det: int
    volume: Optional[Fraction] = None
    class_degrees: Optional[Tuple[int, ...]] = None
    numerator: Dict[int, int] = field(default_factory=dict)
    degree1: List[Tuple[int, ...]] = field(default_factory=list)
    candidates: List[Tuple[int, ...]] = field(default_factory=list)
    excluded: Tuple[int, ...] = ()
    unimodular: bool = False
    pu1: bool = False
    potentially_unimodular: bool = False
    nongeneric: bool = False
    systems_solved: int = 0
    determinant_computed: bool = False


def simplex_volume(det_value: int, degrees: Optional[Sequence[int]]) -> Fraction:
    """|det G| / (deg v_1 ... deg v_d)."""
    if degrees is None:
        raise ValueError("volume needs a grading")
    return Fraction(abs(det_value), math.prod(degrees))


def pu_tests(simplex: SimplicialCone, degrees: Optional[Sequence[int]]) -> bool:
    """
    Screen for unimodularity.

    False means sigma is certainly nonunimodular: its insertion height
    exceeds 1, or its generator degrees have a common divisor > 1.
    """
    if simplex.insertion_height > 1:
        return False
    if degrees is not None and reduce(math.gcd, degrees, 0) > 1:
        return False
    return True


def residue_reps(diagonal: Sequence[int]) -> List[Tuple[int, ...]]:
    """Vectors b_1 e_1 + ... + b_d e_d, 0 <= b_i < a_i, in mixed-radix order."""
    ranges = [range(a) for a in diagonal]
    return [tuple(b) for b in itertools.product(*ranges)]


def residue_system(G: np.ndarray, indices: Sequence[int],
                   extra: Optional[np.ndarray] = None) -> RationalSolveResult:
    """Solve G^T x_i = e_i for ``indices`` (and G^T y = extra, appended last)."""
    d = G.shape[0]
    columns = len(indices) + (1 if extra is not None else 0)
    rhs = np.zeros((d, columns), dtype=object)
    for column, i in enumerate(indices):
        rhs[i, column] = 1
    if extra is not None:
        rhs[:, -1] = extra
    return solve_multi_rhs(G.T, rhs)


def _reduce(numerators: np.ndarray, G: np.ndarray, denom: int) -> Tuple[np.ndarray, np.ndarray]:
    coords = numerators % denom
    point = coords.dot(G)
    return coords, point // denom


def reduce_mod_parallelotope(candidates: Sequence[Sequence[int]], G,
                             degrees: Optional[Sequence[int]] = None) -> ParallelotopePoints:
    """
    Map each candidate to its representative in par(v_1, ..., v_d).

    Candidates must be supported on coordinates that the residue system
    covers; here all coordinates they use are solved for.
    """
    matrix = as_int_matrix(G)
    d = matrix.shape[0]
    vectors = [as_int_vector(c) for c in candidates]
    indices = sorted({i for v in vectors for i in range(d) if v[i] != 0})
    if indices:
        solved = residue_system(matrix, indices)
        denom = solved.denom
    else:
        solved, denom = None, 1
    seen = set()
    points, coords = [], []
    for v in vectors:
        numerators = np.zeros(d, dtype=object)
        for column, i in enumerate(indices):
            if v[i]:
                numerators = numerators + v[i] * solved.column(column)
        c, p = _reduce(numerators, matrix, denom)
        marker = tuple(int(a) for a in c)
        if marker in seen:
            continue
        seen.add(marker)
        coords.append(c)
        points.append(p)
    return ParallelotopePoints(points, coords, denom, _point_degrees(coords, denom, degrees))


def parallelotope_points(diagonal: Sequence[int], G: np.ndarray, solved: RationalSolveResult,
                         indices: Sequence[int], degrees: Optional[Sequence[int]] = None) -> ParallelotopePoints:
    """
    Residue representatives reduced into the parallelotope.

    The representatives are enumerated as an odometer over the digits
    b_i < a_i (i in ``indices``), so consecutive candidates differ by one
    column of the residue solution in the common case.
    """
    d = G.shape[0]
    denom = solved.denom
    radix = [int(diagonal[i]) for i in indices]
    steps = [solved.column(column) for column in range(len(indices))]
    digits = [0] * len(indices)
    numerators = np.zeros(d, dtype=object)
    points, coords = [], []
    while True:
        c, p = _reduce(numerators, G, denom)
        coords.append(c)
        points.append(p)
        position = len(digits) - 1
        while position >= 0:
            digits[position] += 1
            numerators = numerators + steps[position]
            if digits[position] < radix[position]:
                break
            numerators = numerators - radix[position] * steps[position]
            digits[position] = 0
            position -= 1
        if position < 0:
            break
    return ParallelotopePoints(points, coords, denom, _point_degrees(coords, denom, degrees))


def _point_degrees(coords: List[np.ndarray], denom: int,
                   degrees: Optional[Sequence[int]]) -> Optional[List[int]]:
    if degrees is None:
        return None
    weights = as_int_vector(degrees)
    return [int(c.dot(weights)) // denom for c in coords]


def semi_open_numerator(E: ParallelotopePoints, excluded: Sequence[int],
                        generator_degrees: Sequence[int]) -> Dict[int, int]:
    """
    Numerator of the Hilbert series of the semi-open cone sigma minus its excluded facets.

    Each x in E contributes t^(deg x + deg eps(x)), eps(x) being the sum of
    the v_i with q_i = 0 whose opposite facet is excluded.
    """
    numerator: Dict[int, int] = {}
    for coords, degree in zip(E.coords, E.degrees):
        exponent = degree + sum(generator_degrees[i] for i in excluded if coords[i] == 0)
        numerator[exponent] = numerator.get(exponent, 0) + 1
    return numerator


def degree1_points(E: ParallelotopePoints) -> List[Tuple[int, ...]]:
    """
    Points of E of degree 1.

    Raises:
        ValueError: if E was enumerated without degrees.
    """
    if E.degrees is None:
        raise ValueError("degree-1 points need a grading")
    return [tuple(int(a) for a in p) for p, degree in zip(E.points, E.degrees) if degree == 1]


def local_hilbert_candidates(E: ParallelotopePoints, G) -> List[Tuple[int, ...]]:
    """
    Hilbert basis of sigma from E and the generators.

    x is dropped if x - y lies in sigma for another candidate y, i.e. if
    the coordinates of y are componentwise at most those of x.
    """
    matrix = as_int_matrix(G)
    d = matrix.shape[0]
    denom = E.denom
    entries = []
    for coords, point in zip(E.coords, E.points):
        if any(c != 0 for c in coords):
            entries.append((coords, point))
    for k in range(d):
        coords = np.zeros(d, dtype=object)
        coords[k] = denom
        entries.append((coords, matrix[k]))
    entries.sort(key=lambda entry: (sum(entry[0]), tuple(int(a) for a in entry[0])))

    dtype = np.int64 if denom < INT64_SAFE // max(1, d) else object
    irreducible_coords = np.zeros((0, d), dtype=dtype)
    accepted = []
    for coords, point in entries:
        row = np.array([int(a) for a in coords], dtype=dtype)
        if len(irreducible_coords) and (irreducible_coords <= row).all(axis=1).any():
            continue
        irreducible_coords = np.vstack([irreducible_coords, row])
        accepted.append(tuple(int(a) for a in point))
    return accepted


class SimplicialEvaluator:
    """
    Evaluates simplicial cones of one triangulation.

    Args:
        generators: Generator matrix the simplex keys index into.
        order_vector: O_C of the triangulation.
        degrees: Degree of every generator, or None if ungraded.
        tasks: What to compute.
        scheduling: Solve systems lazily; if False every nonunimodular
            step is performed for every simplex.
    """

    def __init__(self, generators: np.ndarray, order_vector: Optional[OrderVector],
                 degrees: Optional[Sequence[int]], tasks: EvaluationTasks,
                 scheduling: bool = True):
        self.generators = generators
        self.order_vector = order_vector
        self.degrees = list(degrees) if degrees is not None else None
        self.tasks = tasks
        self.scheduling = scheduling

    def _checked_det(self, simplex: SimplicialCone, computed: int) -> int:
        if simplex.det and simplex.det != computed:
            raise ConsistencyError(
                f"simplex {simplex.key}: stored determinant {simplex.det}, computed {computed}")
        return computed

    def evaluate(self, simplex: SimplicialCone) -> SimplexResult:
        tasks = self.tasks
        key = list(simplex.key)
        G = self.generators[key]
        d = len(key)
        degrees = [self.degrees[k] for k in key] if self.degrees is not None else None
        result = SimplexResult(tuple(simplex.key), simplex.det)
        result.pu1 = simplex.insertion_height <= 1
        pu = pu_tests(simplex, degrees)
        result.potentially_unimodular = pu
        det_value = simplex.det
        ind: Optional[Indicator] = None
        E: Optional[ParallelotopePoints] = None

        if tasks.verify and simplex.inherited:
            self._checked_det(simplex, abs(det(G)))
            result.determinant_computed = True

        if tasks.needs_points:
            if self.scheduling and pu:
                solved = solve_multi_rhs(G.T, self.order_vector.base)
                result.systems_solved += 1
                ind = Indicator(solved.column(0).copy(), solved.denom)
                det_value = self._checked_det(simplex, solved.det)
            if det_value == 1 and self.scheduling:
                E = self._trivial_points(d, degrees)
            else:
                _, D = trigonalize(G)
                diagonal = [int(D[i, i]) for i in range(d)]
                det_value = self._checked_det(simplex, math.prod(diagonal))
                indices = [i for i in range(d) if diagonal[i] > 1]
                extra = self.order_vector.base if (tasks.series and ind is None) else None
                if indices or extra is not None:
                    solved = residue_system(G, indices, extra)
                    result.systems_solved += 1
                    if extra is not None:
                        ind = Indicator(solved.solution[:, -1].copy(), solved.denom)
                if indices:
                    E = parallelotope_points(diagonal, G, solved, indices, degrees)
                else:
                    E = self._trivial_points(d, degrees)
            if tasks.series and ind is None:
                solved = solve_multi_rhs(G.T, self.order_vector.base)
                result.systems_solved += 1
                ind = Indicator(solved.column(0).copy(), solved.denom)
        elif det_value == 0:
            det_value = abs(det(G))
            result.determinant_computed = True

        result.det = det_value
        result.unimodular = det_value == 1

        if degrees is not None and (tasks.volume or tasks.series):
            result.volume = simplex_volume(det_value, degrees)

        if tasks.series:
            zeros = ind.zero_indices
            if zeros:
                nongeneric = resolve_nongeneric(G, zeros)
                result.systems_solved += 1
                result.nongeneric = True
            else:
                nongeneric = {}
            excluded = excluded_facets(ind, nongeneric)
            result.excluded = tuple(excluded)
            result.class_degrees = tuple(sorted(degrees))
            result.numerator = semi_open_numerator(E, excluded, degrees)

        if tasks.deg1 and E is not None:
            result.degree1 = degree1_points(E)
        if tasks.basis and E is not None:
            result.candidates = local_hilbert_candidates(E, G)
        if E is not None and len(E) != det_value:
            raise ConsistencyError(f"simplex {simplex.key}: {len(E)} parallelotope points, det {det_value}")
        return result

    @staticmethod
    def _trivial_points(d: int, degrees: Optional[Sequence[int]]) -> ParallelotopePoints:
        zero = np.zeros(d, dtype=object)
        return ParallelotopePoints([zero.copy()], [zero.copy()], 1, [0] if degrees is not None else None)


def evaluate_simplex(simplex: SimplicialCone, generators: np.ndarray, order_vector: OrderVector,
                     degrees: Optional[Sequence[int]], tasks: EvaluationTasks) -> SimplexResult:
    """Evaluate one simplicial cone; see SimplicialEvaluator."""
    return SimplicialEvaluator(generators, order_vector, degrees, tasks).evaluate(simplex)
