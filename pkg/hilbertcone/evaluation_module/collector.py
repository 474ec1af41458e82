"""
Merges the results of evaluated simplicial cones into run totals.
"""

import logging
import threading
from fractions import Fraction
from typing import Counter, Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from hilbertcone.evaluation_module.order_vector import OrderVector
from hilbertcone.evaluation_module.simplicial_evaluator import (
    EvaluationTasks, SimplexResult, SimplicialEvaluator,
)
from hilbertcone.parallel import SERIAL, ParallelContext
from hilbertcone.series_module.hilbert_series import ClassKey, SeriesAccumulator, accumulate
from hilbertcone.statistics import RunStatistics
from hilbertcone.triangulation_module.simplicial_cone import SimplicialCone

logger = logging.getLogger(__name__)


class EvaluationCollector:
    """
    Evaluates batches of simplicial cones and accumulates

    - the number of simplices and the sum of their determinants,
    - the multiplicity (sum of |det| / product of degrees),
    - the Hilbert series numerators per denominator class,
    - degree-1 points and Hilbert basis candidates,
    - optionally the triangulation itself.
    """

    def __init__(self, generators: np.ndarray, degrees: Optional[Sequence[int]],
                 tasks: EvaluationTasks, parallel: ParallelContext = SERIAL,
                 statistics: Optional[RunStatistics] = None, keep_triangulation: bool = False):
        self.generators = generators
        self.degrees = list(degrees) if degrees is not None else None
        self.tasks = tasks
        self.parallel = parallel
        self.statistics = statistics or RunStatistics()
        self.keep_triangulation = keep_triangulation

        self.order_vector: Optional[OrderVector] = None
        self.evaluator: Optional[SimplicialEvaluator] = None
        self.simplex_count = 0
        self.det_sum = 0
        self.volume = Fraction(0)
        self.series = SeriesAccumulator()
        self.degree1: Set[Tuple[int, ...]] = set()
        self.candidates: Set[Tuple[int, ...]] = set()
        self.triangulation: List[Tuple[Tuple[int, ...], int]] = []
        self._lock = threading.Lock()

    def set_order_vector(self, first: SimplicialCone) -> None:
        """Fix O_C as the sum of the generators of the first simplex."""
        self.order_vector = OrderVector.from_generators(self.generators[list(first.key)])
        self.evaluator = SimplicialEvaluator(self.generators, self.order_vector, self.degrees, self.tasks)
        logger.debug(f"Order vector {list(self.order_vector.base)}")

    def evaluate_batch(self, batch: List[SimplicialCone]) -> None:
        """
        Evaluate ``batch`` and add the results to the totals.

        Args:
            batch: Simplicial cones keyed into ``generators``.

        Raises:
            RuntimeError: if no order vector has been set yet.
        """
        if self.evaluator is None:
            raise RuntimeError("order vector must be set before evaluation")
        results = self.parallel.map(self.evaluator.evaluate, batch)
        shard: Dict[ClassKey, Counter] = {}
        for result in results:
            if result.class_degrees is not None:
                accumulate(shard, result.class_degrees, result.numerator)
        self.series.merge(shard)
        with self._lock:
            for result in results:
                self._merge(result)

    def _merge(self, result: SimplexResult) -> None:
        stats = self.statistics
        self.simplex_count += 1
        self.det_sum += result.det
        if result.volume is not None:
            self.volume += result.volume
        self.degree1.update(result.degree1)
        self.candidates.update(result.candidates)
        if self.keep_triangulation:
            self.triangulation.append((result.key, result.det))

        if result.unimodular:
            stats.bump("unimodular")
        else:
            if result.pu1:
                stats.bump("pu1_nonunimodular")
            if result.potentially_unimodular:
                stats.bump("potentially_unimodular_nonunimodular")
        if result.nongeneric:
            stats.bump("nongeneric")
        if result.systems_solved:
            stats.bump("systems_solved", result.systems_solved)
        if result.determinant_computed:
            stats.bump("determinants_computed")

    def sorted_triangulation(self) -> List[Tuple[Tuple[int, ...], int]]:
        """Kept (key, det) pairs in lexicographic order of the keys."""
        return sorted(self.triangulation)
