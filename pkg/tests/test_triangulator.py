"""
Tests for the lexicographic triangulation and its strategy switches.
"""

import pytest

from hilbertcone.data_module.bundled import cross_polytope
from hilbertcone.data_module.input_parser import parse_input
from hilbertcone.linalg_module.exact_linalg import as_int_matrix, det
from hilbertcone.parallel import ParallelContext
from hilbertcone.statistics import RunStatistics
from hilbertcone.triangulation_module.simplicial_cone import (
    EvaluationBuffer, Pyramid, SimplicialCone, StrategyFlags, StrategyThresholds,
)
from hilbertcone.triangulation_module.triangulator import (
    Triangulator, bit_positions, inherit_det, triangulation_checksum,
)

EAGER_PYRAMIDS = StrategyThresholds(supp_complexity_bound=0, tri_complexity_bound=0,
                                    simplex_buffer_size=0, pyramid_buffer_size=0, memory_bound=0)
STORED_PYRAMIDS = StrategyThresholds(tri_complexity_bound=0)


def triangulate(rows, thresholds=None, partial=False, threads=1, need_dets=True):
    generators = as_int_matrix(rows)
    parallel = ParallelContext(threads)
    collected = []
    capacity = thresholds.simplex_buffer_size if thresholds else 500_000
    buffer = EvaluationBuffer(collected.extend, capacity, parallel=parallel, statistics=RunStatistics())
    triangulator = Triangulator(generators, buffer, thresholds, parallel,
                                need_dets=need_dets, partial=partial)
    hyperplanes = triangulator.run()
    return collected, hyperplanes, buffer.statistics


@pytest.fixture
def cross3_rows():
    return [[int(a) for a in row] for row in parse_input(cross_polytope(3)).matrix]


def test_bit_positions():
    assert bit_positions(0) == []
    assert bit_positions(0b10110) == [1, 2, 4]


def test_inherit_det():
    assert inherit_det(3, 1) == 3
    assert inherit_det(3, 2) is None
    assert inherit_det(1, 0) is None


def test_triangulation_checksum():
    stream = [SimplicialCone((0, 1), 2), SimplicialCone((1, 2), 3)]
    assert triangulation_checksum(stream) == (2, 5)


def test_strategy_flags_are_sticky():
    flags = StrategyFlags(True, StrategyThresholds(supp_complexity_bound=10, tri_complexity_bound=10))
    assert not flags.check_supp(2, 5)
    assert flags.check_supp(3, 4)
    assert flags.check_supp(0, 0)
    assert not flags.check_tri(1, 5, 0, protect_memory=False)
    assert flags.check_tri(2, 6, 0, protect_memory=False)
    assert flags.check_tri(0, 0, 0, protect_memory=False)


def test_memory_protection_switches_to_pyramids():
    flags = StrategyFlags(False, StrategyThresholds(memory_bound=5))
    assert not flags.check_tri(1, 1, 10, protect_memory=False)
    assert flags.check_tri(1, 1, 10, protect_memory=True)


def test_buffer_flushes_when_full():
    batches = []
    buffer = EvaluationBuffer(batches.append, capacity=2)
    for k in range(3):
        buffer.add_simplex(SimplicialCone((k,)))
    assert [len(batch) for batch in batches] == [3]
    assert len(buffer) == 0
    buffer.flush()
    assert len(batches) == 1


def test_buffer_pyramid_lists():
    buffer = EvaluationBuffer(lambda batch: None)
    buffer.store_pyramid(Pyramid((0, 1, 2), 1))
    buffer.store_pyramid(Pyramid((1, 2, 3), 2))
    assert buffer.pyramid_count(1) == 1
    assert buffer.take_pyramids(1) == [Pyramid((0, 1, 2), 1)]
    assert buffer.pyramid_count(1) == 0
    assert buffer.pyramid_count(2) == 1


def test_simplicial_cone_is_one_simplex():
    simplices, hyperplanes, _ = triangulate([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert [(s.key, s.det, s.insertion_height) for s in simplices] == [((0, 1, 2), 1, 0)]
    assert len(hyperplanes) == 3


def test_square_pyramid(square_pyramid):
    simplices, hyperplanes, stats = triangulate(square_pyramid)
    assert sorted((s.key, s.det) for s in simplices) == [((0, 1, 2), 1), ((1, 2, 3), 1)]
    assert len(hyperplanes) == 4
    assert stats.simplices == 2


def test_partial_skips_height_one(square_pyramid):
    simplices, hyperplanes, stats = triangulate(square_pyramid, partial=True)
    assert [s.key for s in simplices] == [(0, 1, 2)]
    assert stats.partial_skipped == 1
    assert len(hyperplanes) == 4


def test_dets_not_requested(square_pyramid):
    simplices, _, _ = triangulate(square_pyramid, need_dets=False)
    assert all(s.det == 0 for s in simplices)


def test_cross_polytope_triangulation(cross3_rows):
    simplices, hyperplanes, _ = triangulate(cross3_rows)
    assert triangulation_checksum(simplices) == (4, 8)
    assert len(hyperplanes) == 8
    generators = as_int_matrix(cross3_rows)
    for simplex in simplices:
        assert simplex.det == abs(det(generators[list(simplex.key)]))


@pytest.mark.parametrize("thresholds", [EAGER_PYRAMIDS, STORED_PYRAMIDS,
                                        StrategyThresholds(supp_complexity_bound=0)])
def test_strategies_give_the_same_triangulation(cross3_rows, thresholds):
    reference, reference_hyps, _ = triangulate(cross3_rows)
    simplices, hyperplanes, _ = triangulate(cross3_rows, thresholds)
    assert sorted((s.key, s.det) for s in simplices) == sorted((s.key, s.det) for s in reference)
    assert set(hyperplanes) == set(reference_hyps)


def test_threads_give_the_same_triangulation(cross3_rows):
    reference, _, _ = triangulate(cross3_rows)
    simplices, _, _ = triangulate(cross3_rows, EAGER_PYRAMIDS, threads=3)
    assert sorted(s.key for s in simplices) == sorted(s.key for s in reference)


def test_non_extreme_generators_are_skipped():
    rows = [[1, 0, 1], [0, 1, 1], [0, 0, 1], [1, 1, 1], [1, 0, 2]]
    simplices, hyperplanes, _ = triangulate(rows)
    # (1, 0, 2) = (1, 0, 1) + (0, 0, 1) lies in the cone already built
    assert all(4 not in s.key for s in simplices)
    assert sum(s.det for s in simplices) == 2
