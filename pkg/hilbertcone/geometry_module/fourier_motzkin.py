"""
Support hyperplanes by incremental Fourier-Motzkin elimination.
"""

import logging
from typing import Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from hilbertcone.errors import ConfigurationError, DimensionError
from hilbertcone.geometry_module.cone_state import (
    ConeState, LinearForm, first_independent_indices, initial_simplex_hyperplanes,
)
from hilbertcone.linalg_module.exact_linalg import as_int_matrix, primitivize
from hilbertcone.parallel import SERIAL, ParallelContext

logger = logging.getLogger(__name__)

# Pairs of negative hyperplanes handed to one worker.
NEGATIVE_CHUNK = 64


def start_state(generators: np.ndarray) -> ConeState:
    """State after processing the simplex on positions 0, ..., d-1."""
    d = generators.shape[1]
    forms = initial_simplex_hyperplanes(generators[:d])
    # form i vanishes on every simplex generator except i
    full = (1 << d) - 1
    zero_sets = [full & ~(1 << i) for i in range(d)]
    state = ConeState(generators=generators, processed_count=d,
                      hyperplanes=forms, zero_sets=zero_sets)
    state.rebuild_incidence()
    return state


def _values(state: ConeState, x) -> List[int]:
    matrix = state.hyperplane_matrix()
    if len(matrix) == 0:
        return []
    return [int(v) for v in matrix.dot(x)]


def find_new_hyp(state: ConeState, i: int, parallel: ParallelContext = SERIAL,
                 values: Optional[List[int]] = None) -> List[LinearForm]:
    """
    Replace the hyperplanes of C_{i-1} by those of C_i.

    Args:
        state: Cone state whose hyperplanes support C_{i-1}.
        i: Position of the generator being added.
        parallel: Thread budget for the loop over negative hyperplanes.
        values: Precomputed hyperplane values on generator i.

    Returns:
        The new hyperplane list (also stored in ``state``).
    """
    d = state.dim
    x = state.generators[i]
    if values is None:
        values = _values(state, x)
    bit = 1 << i
    neg = [k for k, v in enumerate(values) if v < 0]
    zero = [k for k, v in enumerate(values) if v == 0]
    pos = [k for k, v in enumerate(values) if v > 0]

    if state.incidence is None or state.incidence.shape[0] != len(state.hyperplanes):
        state.rebuild_incidence()
    incidence = state.incidence

    if not neg:
        for k in zero:
            state.zero_sets[k] |= bit
            incidence[k, i] = True
        state.processed_count = max(state.processed_count, i + 1)
        return state.hyperplanes

    hyperplanes = state.hyperplanes
    zero_sets = state.zero_sets
    simplicial = [zero_sets[k].bit_count() == d - 1 for k in range(len(hyperplanes))]

    def adjacent(p: int, n: int, common: int) -> bool:
        size = common.bit_count()
        if size < d - 2:
            return False
        if simplicial[p] or simplicial[n]:
            return size == d - 2
        columns = np.flatnonzero(incidence[p] & incidence[n])
        containing = np.count_nonzero(incidence[:, columns].all(axis=1))
        return containing == 2

    def pairs_for(chunk: List[int]) -> List[Tuple[LinearForm, int, np.ndarray]]:
        found = []
        for n in chunk:
            vn = values[n]
            zn = zero_sets[n]
            for p in pos:
                common = zero_sets[p] & zn
                if not adjacent(p, n, common):
                    continue
                vp = values[p]
                form = LinearForm.from_vector(hyperplanes[n].vector * vp - hyperplanes[p].vector * vn)
                row = incidence[p] & incidence[n]
                found.append((form, common | bit, row))
        return found

    chunks = [neg[s:s + NEGATIVE_CHUNK] for s in range(0, len(neg), NEGATIVE_CHUNK)]
    results = parallel.map(pairs_for, chunks)

    kept = sorted(zero + pos)
    new_forms = [hyperplanes[k] for k in kept]
    zero_lookup = set(zero)
    new_sets = [zero_sets[k] | (bit if k in zero_lookup else 0) for k in kept]
    new_rows = [incidence[k].copy() for k in kept]
    for position, k in enumerate(kept):
        if k in zero_lookup:
            new_rows[position][i] = True
    known: Set[LinearForm] = set(new_forms)
    created = 0
    for chunk_result in results:
        for form, mask, row in chunk_result:
            if form in known:
                continue
            known.add(form)
            row = row.copy()
            row[i] = True
            new_forms.append(form)
            new_sets.append(mask)
            new_rows.append(row)
            created += 1

    state.hyperplanes = new_forms
    state.zero_sets = new_sets
    state.incidence = (np.array(new_rows, dtype=bool) if new_rows
                       else np.zeros((0, state.size), dtype=bool))
    state.processed_count = max(state.processed_count, i + 1)
    logger.debug(f"Generator {i}: {len(neg)} negative, {len(pos)} positive, "
                 f"{created} new hyperplanes, {len(new_forms)} total")
    return new_forms


def pyramid_supported_hyperplanes(parent_generators: np.ndarray, i: int,
                                  pyramid_hyps: Iterable[LinearForm],
                                  in_pyramid: Sequence[bool],
                                  known: Set[LinearForm]) -> List[LinearForm]:
    """
    Hyperplanes of a pyramid that are support hyperplanes of C_i.

    A form G qualifies iff G(x_j) >= 0 for all j < i and G(x_j) > 0 for all
    j < i with x_j outside the pyramid.

    Args:
        parent_generators: Generators of the mother cone in processing order.
        i: Position of the pyramid apex in the mother cone.
        pyramid_hyps: Support hyperplanes of the pyramid.
        in_pyramid: Membership flag for positions 0, ..., i-1.
        known: Forms already found; not returned again.
    """
    previous = parent_generators[:i]
    outside = np.array([not flag for flag in in_pyramid[:i]], dtype=bool)
    accepted = []
    for form in pyramid_hyps:
        if form in known:
            continue
        values = previous.dot(form.vector)
        if any(v < 0 for v in values):
            continue
        if outside.any() and any(v == 0 for v in values[outside]):
            continue
        accepted.append(form)
    return accepted


def support_hyperplanes(generators, parallel: ParallelContext = SERIAL) -> Tuple[ConeState, List[int]]:
    """
    Plain Fourier-Motzkin pass over all generators.

    Returns:
        The final state (generators in processing order) and the processing
        order as positions of the input rows.
    """
    rows = as_int_matrix(generators)
    d = rows.shape[1]
    first = first_independent_indices(rows)
    if len(first) < d:
        raise DimensionError(f"generators have rank {len(first)} < {d}")
    chosen = set(first)
    order = first + [j for j in range(rows.shape[0]) if j not in chosen]
    ordered = rows[order]
    state = start_state(ordered)
    for i in range(d, ordered.shape[0]):
        find_new_hyp(state, i, parallel)
    logger.debug(f"Fourier-Motzkin pass: {len(state.hyperplanes)} hyperplanes")
    return state, order


def dualize_inequalities(inequalities, parallel: ParallelContext = SERIAL) -> np.ndarray:
    """
    Extreme integral generators of {x : A x >= 0}.

    The cone must be pointed, i.e. the inequalities must have full rank.
    """
    rows = as_int_matrix(inequalities)
    d = rows.shape[1]
    if len(first_independent_indices(rows)) < d:
        raise ConfigurationError("inequalities do not have full rank: the cone is not pointed")
    state, _ = support_hyperplanes(rows, parallel)
    generators = as_int_matrix([form.coeffs for form in state.hyperplanes])
    logger.info(f"Dualized {rows.shape[0]} inequalities into {generators.shape[0]} generators")
    return generators
