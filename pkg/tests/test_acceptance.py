"""
End-to-end runs with known numbers and brute-force oracles.
"""

import time
from fractions import Fraction

import pytest

from hilbertcone.config import EngineConfig
from hilbertcone.data_module.bundled import example_text
from hilbertcone.data_module.input_parser import Task, parse_input
from hilbertcone.engine_module.cone_engine import ConeEngine
from hilbertcone.errors import ConfigurationError
from hilbertcone.series_module import RawSeries, StandardSeries, series_coefficients

from conftest import (
    EAGER_PYRAMIDS, STORED_PYRAMIDS, brute_force_count, brute_force_facets, graded_points, problem_text,
    random_polygon, run_text,
)

POLYGON_SEEDS = range(12)


def polygon_text(seed):
    return problem_text(random_polygon(seed), grading=[0, 0, 1])


def polygon_points(rows):
    facets = brute_force_facets(rows)
    return sorted([a, b, 1] for a in range(4) for b in range(4)
                  if all(f[0] * a + f[1] * b + f[2] >= 0 for f in facets))


def triangulation_of(text, **config):
    engine = ConeEngine(EngineConfig.from_dict(config), keep_triangulation=True)
    engine.run(parse_input(text))
    return engine.triangulation


def test_toy23_all_tasks(toy23_text):
    report = run_text(toy23_text)
    assert report.grading == [2, 3]
    assert not report.grading_implicit
    assert report.hilbert_basis == [[0, 1], [1, 0]]
    assert report.degree1_points == []
    assert report.volume == Fraction(1, 6)
    assert report.raw_series == {"numerator": [1], "denominator": [2, 3]}
    assert report.cyclotomic_series == {"numerator": [1], "orders": [1, 2, 3],
                                        "multiplicities": [2, 1, 1]}
    assert report.standard_series == {"numerator": [1, -1, 1], "denominator": [1, 6]}
    assert report.quasipolynomial_period == 6
    assert report.quasipolynomial_denominator == 6
    assert report.quasipolynomial == [[6, 1], [-1, 1], [4, 1], [3, 1], [2, 1], [1, 1]]
    assert report.multiplicity_check


def test_wedge(wedge_text):
    report = run_text(wedge_text)
    assert report.extreme_rays == [[1, 0], [1, 5]]
    assert report.support_hyperplanes == [[0, 1], [5, -1]]
    assert report.hilbert_basis == [[1, b] for b in range(6)]
    assert report.degree1_points == [[1, b] for b in range(6)]
    assert (report.triangulation_size, report.determinant_sum) == (1, 5)
    assert report.volume == 5
    assert report.standard_series == {"numerator": [1, 4], "denominator": [1, 1]}
    assert report.quasipolynomial == [[1, 5]]
    assert report.quasipolynomial_denominator == 1


def test_wedge_from_inequalities():
    report = run_text(problem_text([[5, -1], [0, 1]], kind="ineqs"))
    assert report.extreme_rays == [[1, 0], [1, 5]]
    assert report.grading == [1, 0]
    assert report.grading_implicit
    assert report.volume == 5
    assert len(report.hilbert_basis) == 6


def test_unit_cone():
    report = run_text(example_text("unit", 3))
    assert report.volume == 1
    assert report.determinant_sum == 1
    assert report.standard_series == {"numerator": [1], "denominator": [1, 1, 1]}
    assert report.quasipolynomial_denominator == 2
    assert report.quasipolynomial == [[2, 3, 1]]
    assert report.hilbert_basis == [[0, 0, 1], [0, 1, 0], [1, 0, 0]]


def test_cross3():
    report = run_text(example_text("cross", 3))
    counts = report.counts
    assert counts["support_hyperplanes"] == 8
    assert counts["extreme_rays"] == 6
    assert counts["hilbert_basis"] == 7
    assert counts["degree1_points"] == 7
    assert counts["triangulation_size"] == 4
    assert counts["stanley_components"] == 8
    assert report.volume == 8
    assert report.standard_series == {"numerator": [1, 3, 3, 1], "denominator": [1, 1, 1, 1]}
    assert report.multiplicity_check


def test_magic_squares_4x4():
    report = run_text(example_text("magic", 4), tasks=[Task.SUPP, Task.BASIS])
    counts = report.counts
    assert counts["extreme_rays"] == 20
    assert counts["support_hyperplanes"] == 16
    assert counts["hilbert_basis"] == 20
    assert report.sublattice is not None


def test_rank_deficient_generators():
    report = run_text(problem_text([[1, 0, 0], [1, 2, 0]]))
    assert report.rank == 2
    assert report.sublattice is not None
    assert report.hilbert_basis == [[1, 0, 0], [1, 1, 0], [1, 2, 0]]
    assert report.degree1_points == [[1, 0, 0], [1, 1, 0], [1, 2, 0]]
    assert report.volume == 2


def test_implicit_grading_keeps_input_order():
    square = [[1, 0, 1], [0, 0, 1], [0, 1, 1], [1, 1, 1]]
    for rows in (square, [[1, 1, 2]] + square):
        engine = ConeEngine(EngineConfig.from_dict({}), keep_triangulation=True)
        report = engine.run(parse_input(problem_text(rows)))
        assert report.grading_implicit
        assert report.grading == [0, 0, 1]
        assert report.generators == square
        assert engine.triangulation == [((0, 1, 2), 1), ((0, 2, 3), 1)]


def test_series_with_long_quasipolynomial_period():
    rows = [[0, 3, 2, 5], [1, 4, 5, 1], [3, 1, 5, 1], [4, 5, 4, 5], [2, 2, 4, 3], [0, 1, 5, 0], [4, 5, 4, 5]]
    grading = [1, 1, 1, 1]
    started = time.perf_counter()
    report = run_text(problem_text(rows, grading=grading))
    assert time.perf_counter() - started < 60
    assert report.quasipolynomial_period == 990
    assert report.multiplicity_check
    facets = brute_force_facets(rows)
    counts = [len(graded_points(facets, grading, k, k)) for k in range(7)]
    raw = RawSeries(report.raw_series["numerator"], report.raw_series["denominator"])
    assert series_coefficients(raw, 6) == counts


def test_non_pointed_cone_is_rejected():
    with pytest.raises(ConfigurationError):
        run_text(problem_text([[1, 0], [-1, 0], [0, 1]]))


def test_partial_triangulation_rejects_volume(toy23_text):
    with pytest.raises(ConfigurationError):
        run_text(toy23_text, tasks=[Task.VOLUME], partial_triangulation=True)


def test_partial_triangulation_restricts_default_tasks(toy23_text):
    report = run_text(toy23_text, partial_triangulation=True)
    assert report.tasks == ["basis", "deg1", "supp"]
    assert report.volume is None


@pytest.mark.parametrize("seed", POLYGON_SEEDS)
def test_polygon_series_against_brute_force(seed):
    rows = random_polygon(seed)
    report = run_text(polygon_text(seed))
    raw = RawSeries(report.raw_series["numerator"], report.raw_series["denominator"])
    assert series_coefficients(raw, 6) == [brute_force_count(rows, k) for k in range(7)]
    if report.standard_series is not None:
        standard = StandardSeries(report.standard_series["numerator"],
                                  report.standard_series["denominator"])
        assert series_coefficients(standard, 6) == series_coefficients(raw, 6)
    assert report.multiplicity_check


@pytest.mark.parametrize("seed", POLYGON_SEEDS)
def test_polygon_hilbert_basis_is_its_lattice_points(seed):
    rows = random_polygon(seed)
    report = run_text(polygon_text(seed))
    points = polygon_points(rows)
    assert report.degree1_points == points
    assert report.hilbert_basis == points


@pytest.mark.parametrize("seed", POLYGON_SEEDS)
def test_partial_triangulation_gives_the_same_basis(seed):
    text = polygon_text(seed)
    full = run_text(text, tasks=[Task.BASIS])
    partial = run_text(text, tasks=[Task.BASIS], partial_triangulation=True)
    assert partial.hilbert_basis == full.hilbert_basis


@pytest.mark.parametrize("strategy", [EAGER_PYRAMIDS, STORED_PYRAMIDS])
def test_strategy_invariance(strategy):
    text = example_text("cross", 3)
    assert triangulation_of(text, **strategy) == triangulation_of(text)
    assert run_text(text, **strategy).without_timings() == run_text(text).without_timings()


@pytest.mark.parametrize("seed", range(4))
def test_polygon_strategy_invariance(seed):
    text = polygon_text(seed)
    assert triangulation_of(text, **EAGER_PYRAMIDS) == triangulation_of(text)


@pytest.mark.parametrize("threads", [4, 16])
def test_thread_count_invariance(threads):
    text = example_text("cross", 3)
    reference = run_text(text).without_timings()
    assert run_text(text, threads=threads).without_timings() == reference
    assert run_text(text, threads=threads, **EAGER_PYRAMIDS).without_timings() == reference


def test_verify_mode(toy23_text):
    for text in (toy23_text, example_text("cross", 3), polygon_text(0)):
        report = run_text(text, verify=True, **STORED_PYRAMIDS)
        assert report.multiplicity_check


@pytest.mark.slow
def test_cross10():
    report = run_text(example_text("cross", 10), tasks=[Task.SUPP, Task.TRI, Task.VOLUME, Task.BASIS])
    counts = report.counts
    assert counts["support_hyperplanes"] == 1024
    assert counts["hilbert_basis"] == 21
    assert counts["stanley_components"] == 1024
    assert counts["triangulation_size"] == 512
    assert report.volume == 1024


@pytest.mark.slow
def test_cyclo36():
    report = run_text(example_text("cyclo", 36), tasks=[Task.SUPP, Task.TRI, Task.BASIS], threads=4)
    counts = report.counts
    assert counts["support_hyperplanes"] == 46656
    assert counts["hilbert_basis"] == 37
    assert counts["stanley_components"] == 46656


@pytest.mark.slow
def test_magic_squares_5x5():
    report = run_text(example_text("magic", 5), tasks=[Task.SUPP, Task.BASIS], threads=4)
    counts = report.counts
    assert counts["extreme_rays"] == 1940
    assert counts["support_hyperplanes"] == 25
    assert counts["hilbert_basis"] == 4828
