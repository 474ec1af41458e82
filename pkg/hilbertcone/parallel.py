"""
Thread budget shared by all parallel loops of one run.

Only one level of parallelism is ever active: while pyramid lists are
evaluated in parallel, the loops inside Fourier-Motzkin, triangulation
extension and buffer evaluation run serially in their worker thread.
"""

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from typing import Callable, Iterable, Iterator, List, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class ParallelContext:
    """
    Owns the thread count and the pyramid-evaluation flag.

    Args:
        threads: Maximum number of worker threads (1 disables parallel loops).
    """

    def __init__(self, threads: int = 1):
        self.threads = max(1, int(threads))
        self._outer_active = False
        self._lock = threading.Lock()

    @property
    def inner_parallel_allowed(self) -> bool:
        return self.threads > 1 and not self._outer_active

    @contextmanager
    def outer_section(self) -> Iterator[None]:
        with self._lock:
            if self._outer_active:
                raise RuntimeError("nested parallel section")
            self._outer_active = True
        try:
            yield
        finally:
            with self._lock:
                self._outer_active = False

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
        """Apply ``fn`` to every item, in parallel when allowed. Order is kept."""
        work = list(items)
        if not self.inner_parallel_allowed or len(work) < 2:
            return [fn(item) for item in work]
        with ThreadPoolExecutor(max_workers=self.threads) as executor:
            return list(executor.map(fn, work))

    def map_outer(self, fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
        """Parallel loop that disables all inner parallel loops while it runs."""
        work = list(items)
        if self.threads == 1 or len(work) < 2:
            return [fn(item) for item in work]
        with self.outer_section():
            with ThreadPoolExecutor(max_workers=self.threads) as executor:
                return list(executor.map(fn, work))


SERIAL = ParallelContext(1)
