"""
Run counters shared by the triangulator and the simplex evaluation.
"""

import threading
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict


@dataclass
class RunStatistics:
    """Thread-safe counters; ``bump`` is the only mutator used by workers."""
    simplices: int = 0
    partial_skipped: int = 0
    determinants_computed: int = 0
    determinants_inherited: int = 0
    recursive_pyramids: int = 0
    pyramids_discarded: int = 0
    buffer_flushes: int = 0
    unimodular: int = 0
    pu1_nonunimodular: int = 0           # nonunimodular, passed the height screen
    potentially_unimodular_nonunimodular: int = 0
    nongeneric: int = 0
    systems_solved: int = 0
    pyramids_per_level: Counter = field(default_factory=Counter)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def bump(self, name: str, amount: int = 1) -> None:
        with self._lock:
            setattr(self, name, getattr(self, name) + amount)

    def count_pyramid(self, level: int) -> None:
        with self._lock:
            self.pyramids_per_level[level] += 1

    def to_dict(self) -> Dict[str, object]:
        return {
            "simplices": self.simplices,
            "partial_skipped": self.partial_skipped,
            "determinants_computed": self.determinants_computed,
            "determinants_inherited": self.determinants_inherited,
            "recursive_pyramids": self.recursive_pyramids,
            "pyramids_discarded": self.pyramids_discarded,
            "buffer_flushes": self.buffer_flushes,
            "unimodular": self.unimodular,
            "pu1_nonunimodular": self.pu1_nonunimodular,
            "potentially_unimodular_nonunimodular": self.potentially_unimodular_nonunimodular,
            "nongeneric": self.nongeneric,
            "systems_solved": self.systems_solved,
            "pyramids_per_level": {str(k): v for k, v in sorted(self.pyramids_per_level.items())},
        }
