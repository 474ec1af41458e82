"""
Lexicographic triangulation built from a mix of direct extension,
recursive pyramids and stored (nonrecursive) pyramids.

Every strategy produces the same set of simplicial cones: the total
pyramid decomposition of a cone equals its lexicographic triangulation.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Set, Tuple

import numpy as np

from hilbertcone.geometry_module.cone_state import (
    ConeState, LinearForm, first_independent_indices,
)
from hilbertcone.geometry_module.fourier_motzkin import (
    find_new_hyp, pyramid_supported_hyperplanes, start_state,
)
from hilbertcone.errors import DimensionError
from hilbertcone.linalg_module.exact_linalg import det
from hilbertcone.parallel import SERIAL, ParallelContext
from hilbertcone.statistics import RunStatistics
from hilbertcone.triangulation_module.simplicial_cone import (
    EvaluationBuffer, Pyramid, SimplicialCone, StrategyFlags, StrategyThresholds,
)

logger = logging.getLogger(__name__)

EXTENSION_CHUNK = 32


def bit_positions(mask: int) -> List[int]:
    positions = []
    j = 0
    while mask:
        if mask & 1:
            positions.append(j)
        mask >>= 1
        j += 1
    return positions


def inherit_det(insertion_height: int, partner_det: int) -> Optional[int]:
    """Determinant of a simplex across a facet from a unimodular partner."""
    if partner_det == 1:
        return insertion_height
    return None


def triangulation_checksum(stream: Sequence[SimplicialCone]) -> Tuple[int, int]:
    """Number of simplices and the sum of their determinants."""
    return len(stream), sum(simplex.det for simplex in stream)


@dataclass
class _LocalSimplex:
    mask: int           # local positions
    det: int
    added_with: int     # local position, -1 for the first simplex


class Triangulator:
    """
    Drives the triangulation of the cone spanned by ``generators``.

    Args:
        generators: Generator matrix in processing order (rows).
        buffer: Receives simplices and stored pyramids.
        thresholds: Strategy switching bounds.
        parallel: Thread budget.
        need_dets: Compute determinants while triangulating.
        partial: Skip simplices and pyramids of height 1.
        statistics: Counters.
        on_first_simplex: Called with the first simplex of the top cone
            before it is buffered.
    """

    def __init__(self, generators: np.ndarray, buffer: EvaluationBuffer,
                 thresholds: Optional[StrategyThresholds] = None,
                 parallel: ParallelContext = SERIAL, need_dets: bool = True,
                 partial: bool = False, statistics: Optional[RunStatistics] = None,
                 on_first_simplex: Optional[Callable[[SimplicialCone], None]] = None):
        self.generators = generators
        self.buffer = buffer
        self.thresholds = thresholds or StrategyThresholds()
        self.parallel = parallel
        self.need_dets = need_dets
        self.partial = partial
        self.statistics = statistics or buffer.statistics
        self.on_first_simplex = on_first_simplex

    @property
    def dim(self) -> int:
        return self.generators.shape[1]

    def run(self) -> List[LinearForm]:
        """Triangulate the top cone; returns its support hyperplanes."""
        key = list(range(self.generators.shape[0]))
        hyperplanes = self.build_cone(key, recursion=True, level=-1, top=True)
        self.evaluate_pyrs(0)
        self.buffer.flush()
        return hyperplanes

    def add_simplex(self, key: Sequence[int], height: int, added_with: int,
                    det_value: int = 0, inherited: bool = False) -> None:
        """
        Record a simplex of the triangulation and queue it for evaluation.

        Args:
            key: Generator indices of the simplex, in any order.
            height: Lattice height of the apex over the facet it extends.
            added_with: Index of that apex, or -1 for a first simplex.
            det_value: Known determinant, 0 if it still has to be computed.
            inherited: ``det_value`` was derived rather than computed.
        """
        simplex = SimplicialCone(tuple(sorted(key)), det_value, height, added_with, inherited)
        if self.partial and height == 1:
            self.statistics.bump("partial_skipped")
            return
        self.statistics.bump("simplices")
        self.buffer.add_simplex(simplex)

    def build_cone(self, key: Sequence[int], recursion: bool, level: int,
                   top: bool = False) -> List[LinearForm]:
        """
        Process the cone (or pyramid) spanned by the generators in ``key``.

        Returns:
            Support hyperplanes of the cone; for a stored pyramid they are
            incomplete (the last generator is skipped).
        """
        return _ConeBuild(self, list(key), recursion, level, top).run()

    def evaluate_pyrs(self, level: int) -> None:
        """Evaluate stored pyramids of ``level`` and, recursively, of higher levels."""
        pyramids = self.buffer.take_pyramids(level)
        if not pyramids:
            return
        logger.debug(f"Evaluating {len(pyramids)} pyramids of level {level}")
        chunk = max(1, self.buffer.pyramid_capacity)
        for start in range(0, len(pyramids), chunk):
            batch = pyramids[start:start + chunk]
            self.parallel.map_outer(
                lambda p: self.build_cone(p.key, recursion=False, level=p.level), batch)
            if len(self.buffer) > self.buffer.capacity:
                self.buffer.flush()
            if self.buffer.pyramid_count(level + 1) > self.buffer.pyramid_capacity:
                self.evaluate_pyrs(level + 1)
        self.evaluate_pyrs(level + 1)


class _ConeBuild:
    """State of one BuildCone invocation."""

    def __init__(self, triangulator: Triangulator, key: List[int], recursion: bool,
                 level: int, top: bool):
        self.tri = triangulator
        self.recursion = recursion
        self.level = level
        self.top = top
        d = triangulator.dim
        rows = triangulator.generators[key]
        first = first_independent_indices(rows)
        if len(first) < d:
            raise DimensionError(f"cone with key {key} has rank {len(first)} < {d}")
        chosen = set(first)
        order = first + [p for p in range(len(key)) if p not in chosen]
        self.key = [key[p] for p in order]
        self.local = rows[order]
        self.flags = StrategyFlags(recursion, triangulator.thresholds)
        self.triangulation: Optional[List[_LocalSimplex]] = []

    def global_key(self, mask: int) -> List[int]:
        return [self.key[j] for j in bit_positions(mask)]

    def run(self) -> List[LinearForm]:
        tri = self.tri
        d = tri.dim
        self.state = start_state(self.local)
        first_mask = (1 << d) - 1
        first_det = 0
        if tri.need_dets:
            first_det = abs(det(self.local[:d]))
            tri.statistics.bump("determinants_computed")
        first = SimplicialCone(tuple(sorted(self.key[:d])), first_det, 0, -1)
        if self.top and tri.on_first_simplex is not None:
            tri.on_first_simplex(first)
        tri.add_simplex(first.key, 0, -1, first_det)
        self.triangulation.append(_LocalSimplex(first_mask, first_det, -1))

        last = len(self.key) - 1
        for i in range(d, len(self.key)):
            forms = self.state.hyperplane_matrix()
            values = [int(v) for v in forms.dot(self.local[i])]
            neg = [k for k, v in enumerate(values) if v < 0]
            if not neg:
                find_new_hyp(self.state, i, tri.parallel, values)
                continue
            pos_count = sum(1 for v in values if v > 0)
            if self.flags.check_supp(len(neg), pos_count) and self.recursion:
                self.process_pyrs_rec(i, neg, values)
                continue
            size = len(self.triangulation) if self.triangulation is not None else 0
            if self.flags.check_tri(len(neg), size, len(tri.buffer), protect_memory=self.level >= 0):
                self.triangulation = None
                self.process_pyrs(i, neg, values)
            else:
                self.extend_tri(i, neg, values)
            if self.recursion or i < last:
                find_new_hyp(self.state, i, tri.parallel, values)
        return self.state.hyperplanes

    def _pyramid_mask(self, k: int) -> int:
        return self.state.zero_sets[k]

    def process_pyrs_rec(self, i: int, neg: List[int], values: List[int]) -> None:
        tri = self.tri
        hyperplanes = self.state.hyperplanes
        kept = [hyperplanes[k] for k, v in enumerate(values) if v >= 0]
        known: Set[LinearForm] = set(kept)
        collected: List[LinearForm] = []
        for k in neg:
            mask = self._pyramid_mask(k)
            in_pyramid = [bool((mask >> j) & 1) for j in range(i)]
            pyramid_key = self.global_key(mask) + [self.key[i]]
            tri.statistics.bump("recursive_pyramids")
            pyramid_hyps = tri.build_cone(pyramid_key, recursion=True, level=self.level)
            accepted = pyramid_supported_hyperplanes(self.local, i, pyramid_hyps, in_pyramid, known)
            known.update(accepted)
            collected.extend(accepted)
        self.triangulation = None
        self.state.reset_hyperplanes(kept + collected, i + 1)

    def process_pyrs(self, i: int, neg: List[int], values: List[int]) -> None:
        tri = self.tri
        for k in neg:
            if tri.partial and -values[k] == 1:
                tri.statistics.bump("pyramids_discarded")
                continue
            pyramid_key = tuple(self.global_key(self._pyramid_mask(k)) + [self.key[i]])
            tri.buffer.store_pyramid(Pyramid(pyramid_key, self.level + 1))
            tri.statistics.count_pyramid(self.level + 1)

    def extend_tri(self, i: int, neg: List[int], values: List[int]) -> None:
        tri = self.tri
        d = tri.dim
        bit = 1 << i
        zero_sets = self.state.zero_sets
        triangulation = self.triangulation

        def extend(chunk: List[int]) -> List[Tuple[int, int, int]]:
            found = []
            for k in chunk:
                facet = zero_sets[k]
                h = -values[k]
                if facet.bit_count() == d - 1:
                    found.append((facet | bit, h, 0))
                    continue
                for simplex in triangulation:
                    if simplex.added_with >= 0 and not (facet >> simplex.added_with) & 1:
                        continue
                    common = simplex.mask & facet
                    if common.bit_count() == d - 1:
                        found.append((common | bit, h, simplex.det))
            return found

        chunks = [neg[s:s + EXTENSION_CHUNK] for s in range(0, len(neg), EXTENSION_CHUNK)]
        created = []
        for found in tri.parallel.map(extend, chunks):
            for mask, h, partner_det in found:
                det_value = 0
                inherited = False
                if tri.need_dets:
                    det_value = inherit_det(h, partner_det)
                    if det_value is None:
                        det_value = abs(det(self.local[bit_positions(mask)]))
                        tri.statistics.bump("determinants_computed")
                    else:
                        inherited = True
                        tri.statistics.bump("determinants_inherited")
                tri.add_simplex(self.global_key(mask), h, self.key[i], det_value, inherited)
                created.append(_LocalSimplex(mask, det_value, i))
        triangulation.extend(created)
