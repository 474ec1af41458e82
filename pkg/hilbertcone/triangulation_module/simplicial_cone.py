"""
Value types of the triangulator and the buffer between triangulation and evaluation.
"""

import logging
import threading
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

from hilbertcone.parallel import SERIAL, ParallelContext
from hilbertcone.statistics import RunStatistics

logger = logging.getLogger(__name__)


@dataclass
class SimplicialCone:
    """
    A simplicial cone of the triangulation.

    Attributes:
        key: Sorted generator indices.
        det: |det G_sigma|, 0 while unknown.
        insertion_height: Height of the apex over the facet it was added
            across, 0 for the first simplex of a cone or pyramid.
        added_with: Generator index of that apex, -1 for first simplices.
        inherited: True if ``det`` was derived from a unimodular neighbour.
    """
    key: Tuple[int, ...]
    det: int = 0
    insertion_height: int = 0
    added_with: int = -1
    inherited: bool = False


@dataclass(frozen=True)
class Pyramid:
    key: Tuple[int, ...]   # apex last
    level: int


@dataclass
class StrategyThresholds:
    supp_complexity_bound: int = 1_000_000
    tri_complexity_bound: int = 100_000
    simplex_buffer_size: int = 500_000
    pyramid_buffer_size: int = 200_000
    memory_bound: int = 500_000


@dataclass
class StrategyFlags:
    """Per-cone switches; once set they stay set."""
    recursion_allowed: bool
    thresholds: StrategyThresholds
    make_pyramids_supp: bool = False
    make_pyramids_tri: bool = False

    def check_supp(self, neg: int, pos: int) -> bool:
        """Switch to recursive pyramids once neg x pos exceeds the supp bound."""
        if not self.make_pyramids_supp and neg * pos > self.thresholds.supp_complexity_bound:
            self.make_pyramids_supp = True
            logger.debug(f"Switching to recursive pyramids: {neg} x {pos} hyperplane pairs")
        return self.make_pyramids_supp

    def check_tri(self, neg: int, triangulation_size: int, buffered: int, protect_memory: bool) -> bool:
        """
        Whether the next generator goes into stored pyramids.

        Args:
            neg: Number of hyperplanes the generator is beyond.
            triangulation_size: Simplices in the current triangulation.
            buffered: Simplices waiting in the evaluation buffer.
            protect_memory: Also switch when the buffer passes the memory bound.
        """
        if self.make_pyramids_tri:
            return True
        if neg * triangulation_size > self.thresholds.tri_complexity_bound:
            logger.debug(f"Switching to stored pyramids: {neg} x {triangulation_size} facet tests")
            self.make_pyramids_tri = True
        elif protect_memory and buffered > self.thresholds.memory_bound:
            logger.debug(f"Switching to stored pyramids: {buffered} simplices buffered")
            self.make_pyramids_tri = True
        return self.make_pyramids_tri


class EvaluationBuffer:
    """
    Collects simplicial cones and stored pyramids.

    Simplices are handed to ``evaluate_batch`` once more than ``capacity``
    of them are waiting. Inside a parallel pyramid section the flushing
    thread evaluates its batch serially.
    """

    def __init__(self, evaluate_batch: Callable[[List[SimplicialCone]], None],
                 capacity: int = 500_000, pyramid_capacity: int = 200_000,
                 parallel: ParallelContext = SERIAL, statistics: RunStatistics = None):
        self.evaluate_batch = evaluate_batch
        self.capacity = capacity
        self.pyramid_capacity = pyramid_capacity
        self.parallel = parallel
        self.statistics = statistics or RunStatistics()
        self.simplices: List[SimplicialCone] = []
        self.pyramid_lists: Dict[int, List[Pyramid]] = defaultdict(list)
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self.simplices)

    def add_simplex(self, simplex: SimplicialCone) -> None:
        """Queue ``simplex``; the buffer is flushed once it is over capacity."""
        with self._lock:
            self.simplices.append(simplex)
            overfull = len(self.simplices) > self.capacity
        if overfull:
            self.flush()

    def flush(self) -> None:
        """Evaluate every queued simplex."""
        with self._lock:
            batch = self.simplices
            self.simplices = []
        if not batch:
            return
        self.statistics.bump("buffer_flushes")
        logger.debug(f"Evaluating {len(batch)} buffered simplices")
        self.evaluate_batch(batch)

    def store_pyramid(self, pyramid: Pyramid) -> None:
        with self._lock:
            self.pyramid_lists[pyramid.level].append(pyramid)

    def take_pyramids(self, level: int) -> List[Pyramid]:
        with self._lock:
            return self.pyramid_lists.pop(level, [])

    def pyramid_count(self, level: int) -> int:
        with self._lock:
            return len(self.pyramid_lists.get(level, ()))
