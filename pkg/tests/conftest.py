import itertools
import math
import random
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pytest
import sympy as sp

from hilbertcone.config import EngineConfig
from hilbertcone.data_module.input_parser import Task, parse_input
from hilbertcone.engine_module.cone_engine import ConeEngine

EAGER_PYRAMIDS = {"supp_complexity_bound": 0, "tri_complexity_bound": 0, "simplex_buffer_size": 0,
                  "pyramid_buffer_size": 0, "memory_bound": 0}
STORED_PYRAMIDS = {"tri_complexity_bound": 0}


def problem_text(rows: Sequence[Sequence[int]], kind: str = "gens",
                 grading: Optional[Sequence[int]] = None) -> str:
    lines = [f"{len(rows)} {len(rows[0])}"]
    lines += [" ".join(str(a) for a in row) for row in rows]
    lines.append(kind)
    if grading is not None:
        lines += ["grading", " ".join(str(a) for a in grading)]
    return "\n".join(lines) + "\n"


def run_text(text: str, tasks: Optional[Sequence[Task]] = None, keep_triangulation: bool = False,
             **config):
    spec = parse_input(text)
    if tasks:
        spec = spec.with_tasks(tasks)
    engine = ConeEngine(EngineConfig.from_dict(config), keep_triangulation=keep_triangulation)
    return engine.run(spec)


def _det3(a, b, c) -> int:
    return (a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


def random_polygon(seed: int, points: int = 5, box: int = 3) -> List[Tuple[int, int, int]]:
    """Lattice points (a, b) in [0, box]^2 lifted to height 1, not all collinear."""
    rng = random.Random(seed)
    while True:
        rows = [(rng.randint(0, box), rng.randint(0, box), 1) for _ in range(points)]
        if any(_det3(*triple) != 0 for triple in itertools.combinations(rows, 3)):
            return rows


def brute_force_facets(rows: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    """Primitive facet normals of a full-dimensional cone from all (d - 1)-subsets."""
    d = len(rows[0])
    facets = set()
    for subset in itertools.combinations(rows, d - 1):
        kernel = sp.Matrix([list(row) for row in subset]).nullspace()
        if len(kernel) != 1:
            continue
        scale = math.lcm(*[int(sp.fraction(a)[1]) for a in kernel[0]])
        normal = [int(a * scale) for a in kernel[0]]
        g = math.gcd(*normal)
        normal = tuple(a // g for a in normal)
        values = [sum(a * b for a, b in zip(normal, x)) for x in rows]
        if all(value >= 0 for value in values):
            facets.add(normal)
        elif all(value <= 0 for value in values):
            facets.add(tuple(-a for a in normal))
    return sorted(facets)


def brute_force_count(rows: Sequence[Sequence[int]], k: int, box: int = 3) -> int:
    """Lattice points of the cone at height k."""
    facets = brute_force_facets(rows)
    count = 0
    for a in range(0, box * k + 1):
        for b in range(0, box * k + 1):
            x = (a, b, k)
            if all(sum(f * c for f, c in zip(normal, x)) >= 0 for normal in facets):
                count += 1
    return count


@pytest.fixture
def toy23_text():
    return "2 2\n1 0\n0 1\ngens\ngrading\n2 3\n"


@pytest.fixture
def wedge_text():
    """cone((1,0), (1,5)) graded by the first coordinate."""
    return problem_text([[1, 0], [1, 5]], grading=[1, 0])


@pytest.fixture
def square_pyramid():
    return [[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]]


def random_cone(seed: int, d: int, n: int, box: int = 7,
                max_height: Optional[int] = None) -> List[Tuple[int, ...]]:
    """
    n nonzero generators with entries in [0, box] spanning Q^d.

    With ``max_height`` the last coordinate is drawn from [1, max_height]
    instead, so the cone is graded by it.
    """
    rng = random.Random(seed * 1000 + d)
    while True:
        if max_height is None:
            rows = [tuple(rng.randint(0, box) for _ in range(d)) for _ in range(n)]
        else:
            rows = [tuple(rng.randint(0, box) for _ in range(d - 1)) + (rng.randint(1, max_height),)
                    for _ in range(n)]
        if all(any(row) for row in rows) and sp.Matrix([list(row) for row in rows]).rank() == d:
            return rows


def brute_force_extreme_rays(rows: Sequence[Sequence[int]]) -> List[List[int]]:
    facets = brute_force_facets(rows)
    d = len(rows[0])
    rays = set()
    for x in rows:
        vanishing = [f for f in facets if sum(a * b for a, b in zip(f, x)) == 0]
        if vanishing and sp.Matrix([list(f) for f in vanishing]).rank() == d - 1:
            g = math.gcd(*x)
            rays.add(tuple(a // g for a in x))
    return sorted(list(ray) for ray in rays)


def graded_points(facets: Sequence[Sequence[int]], grading: Sequence[int], k: int,
                  bound: int) -> np.ndarray:
    """
    Lattice points x >= 0 of the cone with grading(x) = k whose first d - 1
    coordinates are at most ``bound``. The grading must end in 1.
    """
    d = len(grading)
    weights = np.array(grading[:-1], dtype=np.int64)
    head = np.indices((bound + 1,) * (d - 1)).reshape(d - 1, -1).T
    last = k - head.dot(weights)
    keep = last >= 0
    points = np.column_stack([head[keep], last[keep]])
    inside = (points.dot(np.array(facets, dtype=np.int64).T) >= 0).all(axis=1)
    return points[inside]


def brute_force_hilbert_basis(rows: Sequence[Sequence[int]]) -> List[List[int]]:
    """
    Irreducible lattice points of a cone in the nonnegative orthant, graded
    by the coordinate sum. Every basis element has degree at most the sum of
    the d largest generator degrees.
    """
    d = len(rows[0])
    facets = np.array(brute_force_facets(rows), dtype=np.int64)
    top = sum(sorted((sum(x) for x in rows), reverse=True)[:d])
    grading = [1] * d
    basis: List[np.ndarray] = []
    for k in range(1, top + 1):
        previous = np.array(basis) if basis else None
        for x in graded_points(facets, grading, k, k):
            if previous is not None and ((x - previous).dot(facets.T) >= 0).all(axis=1).any():
                continue
            basis.append(x)
    return sorted([int(a) for a in x] for x in basis)
