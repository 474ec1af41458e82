"""
Global reduction of Hilbert basis candidates.

x is reducible iff x - y lies in C for some other candidate y, i.e.
lambda(y) <= lambda(x) for every support form lambda. Candidates are
processed by increasing degree and compared only with the irreducible
elements of smaller degree; two distinct elements of the same degree
never reduce each other.
"""

import logging
from itertools import groupby
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from hilbertcone.errors import ConsistencyError
from hilbertcone.geometry_module.cone_state import LinearForm
from hilbertcone.linalg_module.exact_linalg import as_int_matrix
from hilbertcone.parallel import SERIAL, ParallelContext

logger = logging.getLogger(__name__)

INT64_SAFE = 2 ** 62
BUCKET_CHUNK = 256

Vector = Tuple[int, ...]


class CandidatePool:
    """
    Deduplicated candidates with their support values, sorted by
    (degree, lexicographic).

    Args:
        candidates: Integer vectors in C.
        hyperplanes: Support forms of C.
        grading: Degree function; without one the sum of the support
            values serves as degree.
    """

    def __init__(self, candidates: Iterable[Sequence[int]], hyperplanes: Sequence[LinearForm],
                 grading: Optional[LinearForm] = None):
        unique = sorted({tuple(int(a) for a in c) for c in candidates})
        unique = [c for c in unique if any(c)]
        forms = as_int_matrix([h.coeffs for h in hyperplanes])
        values = as_int_matrix(unique).dot(forms.T) if unique else np.zeros((0, len(hyperplanes)), dtype=object)
        for row, c in zip(values, unique):
            if any(v < 0 for v in row):
                raise ConsistencyError(f"candidate {list(c)} is not in the cone")
        if grading is not None:
            degrees = [grading(c) for c in unique]
        else:
            degrees = [int(sum(row)) for row in values]
        order = sorted(range(len(unique)), key=lambda j: (degrees[j], unique[j]))
        self.vectors: List[Vector] = [unique[j] for j in order]
        self.degrees: List[int] = [degrees[j] for j in order]
        largest = max((abs(int(v)) for v in values.flat), default=0)
        dtype = np.int64 if largest < INT64_SAFE else object
        self.values = np.array([[int(v) for v in values[j]] for j in order], dtype=dtype).reshape(
            len(order), len(hyperplanes))

    def __len__(self) -> int:
        return len(self.vectors)

    def buckets(self) -> List[Tuple[int, List[int]]]:
        """(degree, positions) in increasing degree."""
        indexed = zip(self.degrees, range(len(self.vectors)))
        return [(degree, [p for _, p in group])
                for degree, group in groupby(indexed, key=lambda pair: pair[0])]


def is_reducible(x_values: np.ndarray, reducer_values: np.ndarray) -> bool:
    """True iff some row of ``reducer_values`` is componentwise <= ``x_values``."""
    if len(reducer_values) == 0:
        return False
    return bool((reducer_values <= x_values).all(axis=1).any())


def is_reducible_in(x: Sequence[int], pool: CandidatePool) -> bool:
    """Reducibility of the pool element ``x`` against all other pool elements."""
    target = tuple(int(a) for a in x)
    position = pool.vectors.index(target)
    others = np.delete(pool.values, position, axis=0)
    return is_reducible(pool.values[position], others)


def global_reduce(pool: CandidatePool, parallel: ParallelContext = SERIAL) -> List[Vector]:
    """Minimal generating set of the monoid, sorted lexicographically."""
    irreducible: List[int] = []
    for degree, positions in pool.buckets():
        frozen = pool.values[irreducible] if irreducible else pool.values[:0]

        def reduce_chunk(chunk: List[int]) -> List[int]:
            return [p for p in chunk if not is_reducible(pool.values[p], frozen)]

        chunks = [positions[s:s + BUCKET_CHUNK] for s in range(0, len(positions), BUCKET_CHUNK)]
        for kept in parallel.map(reduce_chunk, chunks):
            irreducible.extend(kept)
        logger.debug(f"Degree {degree}: {len(positions)} candidates, {len(irreducible)} irreducible so far")
    basis = sorted(pool.vectors[p] for p in irreducible)
    logger.info(f"Hilbert basis: {len(basis)} elements from {len(pool)} candidates")
    return basis


def hilbert_basis(candidates: Iterable[Sequence[int]], hyperplanes: Sequence[LinearForm],
                  grading: Optional[LinearForm] = None,
                  parallel: ParallelContext = SERIAL) -> List[Vector]:
    return global_reduce(CandidatePool(candidates, hyperplanes, grading), parallel)
