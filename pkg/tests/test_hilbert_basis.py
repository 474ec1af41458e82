"""
Tests for the global reduction of Hilbert basis candidates.
"""

import random

import numpy as np
import pytest

from hilbertcone.basis_module import (
    CandidatePool, global_reduce, hilbert_basis, is_reducible, is_reducible_in,
)
from hilbertcone.errors import ConsistencyError
from hilbertcone.geometry_module.cone_state import LinearForm
from hilbertcone.parallel import ParallelContext

WEDGE_FORMS = [LinearForm((5, -1)), LinearForm((0, 1))]
WEDGE_BASIS = [(1, b) for b in range(6)]
ORTHANT_FORMS = [LinearForm((1, 0, 0)), LinearForm((0, 1, 0)), LinearForm((0, 0, 1))]


@pytest.fixture
def wedge_candidates():
    return [(a, b) for a in (1, 2) for b in range(5 * a + 1)]


def test_is_reducible():
    x = np.array([4, 2])
    assert is_reducible(x, np.array([[2, 1]]))
    assert not is_reducible(x, np.array([[5, 0], [0, 3]]))
    assert not is_reducible(x, np.zeros((0, 2), dtype=int))


def test_pool_is_sorted_and_deduplicated(wedge_candidates):
    pool = CandidatePool(wedge_candidates + [(1, 0), (0, 0)], WEDGE_FORMS, LinearForm((1, 0)))
    assert len(pool) == len(wedge_candidates)
    assert pool.vectors[:6] == WEDGE_BASIS
    assert [degree for degree, _ in pool.buckets()] == [1, 2]


def test_wedge_reducibility(wedge_candidates):
    pool = CandidatePool(wedge_candidates, WEDGE_FORMS)
    assert is_reducible_in((2, 3), pool)
    assert not is_reducible_in((1, 3), pool)


def test_wedge_hilbert_basis(wedge_candidates):
    assert hilbert_basis(wedge_candidates, WEDGE_FORMS, LinearForm((1, 0))) == WEDGE_BASIS
    assert hilbert_basis(wedge_candidates, WEDGE_FORMS) == WEDGE_BASIS


def test_orthant_hilbert_basis():
    candidates = [(2, 0, 0), (1, 1, 0), (0, 0, 1), (1, 0, 0), (0, 1, 0), (1, 1, 1)]
    assert hilbert_basis(candidates, ORTHANT_FORMS) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_multiples_are_reducible():
    assert hilbert_basis([(2, 2), (1, 1), (1, 0)], WEDGE_FORMS) == [(1, 0), (1, 1)]


def test_reduction_ignores_order_and_threads(wedge_candidates):
    shuffled = list(wedge_candidates)
    random.Random(7).shuffle(shuffled)
    pool = CandidatePool(shuffled, WEDGE_FORMS, LinearForm((1, 0)))
    assert global_reduce(pool, ParallelContext(4)) == WEDGE_BASIS


def test_candidate_outside_the_cone():
    with pytest.raises(ConsistencyError):
        CandidatePool([(1, 6)], WEDGE_FORMS)
