"""
Tests for support hyperplanes, extreme rays and gradings.
"""

import pytest

from hilbertcone.errors import ConfigurationError
from hilbertcone.geometry_module.cone_state import (
    ConeState, Grading, LinearForm, detect_pointed, extreme_rays, first_independent_indices,
    implicit_grading, initial_simplex_hyperplanes, partition,
)
from hilbertcone.geometry_module.fourier_motzkin import (
    dualize_inequalities, pyramid_supported_hyperplanes, support_hyperplanes,
)
from hilbertcone.linalg_module.exact_linalg import as_int_matrix
from hilbertcone.parallel import ParallelContext


def _forms(state):
    return sorted(h.coeffs for h in state.hyperplanes)


def test_linear_form_is_primitive():
    form = LinearForm.from_vector([2, 4])
    assert form.coeffs == (1, 2)
    assert form([3, 1]) == 5


def test_initial_simplex_hyperplanes():
    forms = initial_simplex_hyperplanes([[1, 0], [1, 5]])
    assert [f.coeffs for f in forms] == [(5, -1), (0, 1)]


def test_first_independent_indices_skips_dependent_rows():
    rows = as_int_matrix([[1, 0, 1], [2, 0, 2], [0, 1, 1], [1, 1, 2], [0, 0, 1]])
    assert first_independent_indices(rows) == [0, 2, 4]


def test_unit_cone_hyperplanes():
    state, order = support_hyperplanes([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert _forms(state) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert order == [0, 1, 2]


def test_wedge_hyperplanes():
    state, _ = support_hyperplanes([[1, 0], [1, 5]])
    assert _forms(state) == [(0, 1), (5, -1)]


def test_square_pyramid_hyperplanes(square_pyramid):
    state, _ = support_hyperplanes(square_pyramid)
    assert _forms(state) == [(-1, 0, 1), (0, -1, 1), (0, 1, 0), (1, 0, 0)]
    assert extreme_rays(state) == [True, True, True, True]


def test_hyperplanes_do_not_depend_on_threads(square_pyramid):
    serial, _ = support_hyperplanes(square_pyramid)
    threaded, _ = support_hyperplanes(square_pyramid, ParallelContext(4))
    assert _forms(serial) == _forms(threaded)


def test_extreme_rays_skip_interior_generators():
    state, order = support_hyperplanes([[1, 0], [1, 1], [0, 1]])
    assert order == [0, 1, 2]
    assert _forms(state) == [(0, 1), (1, 0)]
    assert extreme_rays(state) == [True, False, True]


def test_detect_pointed():
    state, _ = support_hyperplanes([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert detect_pointed(state)
    line, order = support_hyperplanes([[1, 0], [-1, 0], [0, 1]])
    assert order == [0, 2, 1]
    assert _forms(line) == [(0, 1)]
    assert not detect_pointed(line)


def test_dualize_inequalities():
    generators = dualize_inequalities([[1, 0], [0, 1]])
    assert sorted(tuple(int(a) for a in row) for row in generators) == [(0, 1), (1, 0)]


def test_dualize_wedge():
    generators = dualize_inequalities([[5, -1], [0, 1]])
    assert sorted(tuple(int(a) for a in row) for row in generators) == [(1, 0), (1, 5)]


def test_dualize_rejects_non_pointed():
    with pytest.raises(ConfigurationError):
        dualize_inequalities([[1, 0, 0], [0, 1, 0]])


def test_partition():
    forms = [LinearForm((1, 0)), LinearForm((0, 1)), LinearForm((1, -1))]
    neg, zero, pos = partition(forms, [1, 0])
    assert (neg, zero, pos) == ([], [forms[1]], [forms[0], forms[2]])


def test_implicit_grading():
    grading = implicit_grading([[1, 0, 1], [-1, 0, 1], [0, 1, 1], [0, -1, 1]])
    assert grading.form.coeffs == (0, 0, 1)
    assert grading.implicit
    assert grading.degrees == [1, 1, 1, 1]
    assert implicit_grading([[1, 0], [0, 1]]).form.coeffs == (1, 1)
    assert implicit_grading([[1, 0], [1, 5]]).form.coeffs == (1, 0)


def test_no_implicit_grading():
    assert implicit_grading([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]) is None


def test_grading_must_be_positive():
    with pytest.raises(ConfigurationError):
        Grading.for_generators(LinearForm((1, 0)), as_int_matrix([[1, 0], [0, 1]]))


def test_pyramid_supported_hyperplanes(square_pyramid):
    parent = as_int_matrix(square_pyramid)
    # pyramid over the facet of cone(g0, g1, g2) visible from g3
    candidates = [LinearForm((1, 1, -1)), LinearForm((0, -1, 1)), LinearForm((-1, 0, 1))]
    accepted = pyramid_supported_hyperplanes(parent, 3, candidates, [False, True, True], set())
    assert accepted == [LinearForm((0, -1, 1)), LinearForm((-1, 0, 1))]
    known = {LinearForm((-1, 0, 1))}
    assert pyramid_supported_hyperplanes(parent, 3, candidates, [False, True, True], known) == [
        LinearForm((0, -1, 1))]


def test_cone_state_zero_sets(square_pyramid):
    state = ConeState(as_int_matrix(square_pyramid))
    state.reset_hyperplanes([LinearForm((1, 0, 0))], 4)
    assert state.zero_sets == [0b0101]
    assert state.incidence.tolist() == [[True, False, True, False]]
