"""
Exact integer linear algebra on numpy object arrays.

All matrices are ``numpy.ndarray`` with ``dtype=object`` holding Python
ints, so nothing overflows. Elimination is fraction-free (Bareiss); the
only divisions performed are exact.
"""

import math
import logging
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence, Tuple

import numpy as np

from hilbertcone.errors import DimensionError, SingularMatrixError

logger = logging.getLogger(__name__)


def as_int_matrix(rows) -> np.ndarray:
    """Copy ``rows`` into a 2D object array of Python ints."""
    if isinstance(rows, np.ndarray) and rows.dtype == object and rows.ndim == 2:
        return rows.copy()
    data = [[int(a) for a in row] for row in rows]
    if not data:
        return np.zeros((0, 0), dtype=object)
    width = len(data[0])
    if any(len(row) != width for row in data):
        raise DimensionError("rows of unequal length")
    matrix = np.empty((len(data), width), dtype=object)
    for i, row in enumerate(data):
        matrix[i, :] = row
    return matrix


def as_int_vector(entries: Iterable[int]) -> np.ndarray:
    """Copy ``entries`` into a 1D object array of Python ints."""
    values = [int(a) for a in entries]
    vector = np.empty(len(values), dtype=object)
    vector[:] = values
    return vector


def identity(d: int) -> np.ndarray:
    """The d x d identity as an object array of Python integers."""
    return np.eye(d, dtype=int).astype(object)


@dataclass(eq=False)
class RationalSolveResult:
    """
    Solution of ``A X = B`` as integral numerators over one denominator.

    ``A @ solution == denom * B`` holds exactly. ``det`` is ``|det A|``,
    a by-product of the elimination.
    """
    solution: np.ndarray
    denom: int
    det: int

    def column(self, j: int) -> np.ndarray:
        return self.solution[:, j]


def _require_square(M: np.ndarray, name: str = "matrix") -> None:
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {M.shape}")


def det(M) -> int:
    """Exact determinant by Bareiss elimination."""
    A = as_int_matrix(M)
    _require_square(A)
    n = A.shape[0]
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k, k] == 0:
            nonzero = np.flatnonzero(A[k + 1:, k] != 0)
            if len(nonzero) == 0:
                return 0
            r = k + 1 + int(nonzero[0])
            A[[k, r]] = A[[r, k]]
            sign = -sign
        pivot = A[k, k]
        A[k + 1:, k + 1:] = (A[k + 1:, k + 1:] * pivot
                             - np.outer(A[k + 1:, k], A[k, k + 1:])) // prev
        A[k + 1:, k] = 0
        prev = pivot
    return sign * A[n - 1, n - 1]


def rank(M) -> int:
    """Rank over the rationals by fraction-free row echelon form."""
    A = as_int_matrix(M)
    if A.size == 0:
        return 0
    n, m = A.shape
    r = 0
    prev = 1
    for c in range(m):
        if r == n:
            break
        nonzero = np.flatnonzero(A[r:, c] != 0)
        if len(nonzero) == 0:
            continue
        p = r + int(nonzero[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        pivot = A[r, c]
        A[r + 1:, c + 1:] = (A[r + 1:, c + 1:] * pivot
                             - np.outer(A[r + 1:, c], A[r, c + 1:])) // prev
        A[r + 1:, c] = 0
        prev = pivot
        r += 1
    return r


def solve_multi_rhs(A, B) -> RationalSolveResult:
    """
    Solve ``A X = B`` for a nonsingular square ``A`` and any number of
    right hand sides (the columns of ``B``).

    Args:
        A: Square integer matrix.
        B: Integer matrix with as many rows as ``A``; a 1D vector is
            treated as a single column.

    Returns:
        RationalSolveResult with the denominator reduced by the gcd of
        all numerators.
    """
    A = as_int_matrix(A)
    _require_square(A, "coefficient matrix")
    B = np.asarray(B, dtype=object)
    if B.ndim == 1:
        B = B.reshape(-1, 1)
    B = as_int_matrix(B)
    n = A.shape[0]
    if B.shape[0] != n:
        raise DimensionError(f"right hand side has {B.shape[0]} rows, expected {n}")
    k = B.shape[1]
    if n == 0:
        return RationalSolveResult(np.zeros((0, k), dtype=object), 1, 1)

    M = np.concatenate([A, B], axis=1)
    prev = 1
    for c in range(n):
        if M[c, c] == 0:
            nonzero = np.flatnonzero(M[c + 1:, c] != 0)
            if len(nonzero) == 0:
                raise SingularMatrixError("coefficient matrix is singular")
            r = c + 1 + int(nonzero[0])
            M[[c, r]] = M[[r, c]]
        pivot = M[c, c]
        if c < n - 1:
            M[c + 1:, c + 1:] = (M[c + 1:, c + 1:] * pivot
                                 - np.outer(M[c + 1:, c], M[c, c + 1:])) // prev
            M[c + 1:, c] = 0
        prev = pivot

    D = M[n - 1, n - 1]
    U = M[:, :n]
    rhs = M[:, n:]
    X = np.zeros((n, k), dtype=object)
    for i in range(n - 1, -1, -1):
        acc = rhs[i] * D
        if i < n - 1:
            acc = acc - U[i, i + 1:].dot(X[i + 1:])
        X[i] = acc // U[i, i]

    if D < 0:
        X = -X
        D = -D
    g = reduce(math.gcd, (int(a) for a in X.flat), D)
    if g > 1:
        X = X // g
    return RationalSolveResult(X, D // g, D)


def invert(M) -> RationalSolveResult:
    """Inverse of a nonsingular square matrix as numerators over a denominator."""
    A = as_int_matrix(M)
    _require_square(A)
    return solve_multi_rhs(A, identity(A.shape[0]))


def unimodular_echelon(M) -> Tuple[np.ndarray, np.ndarray, int]:
    """
    Row echelon form by unimodular integer row operations.

    Returns:
        ``(X, E, r)`` with ``X @ M == E``, ``|det X| == 1``, ``E`` in row
        echelon form with positive pivots and ``r`` the rank.
    """
    E = as_int_matrix(M)
    n, m = E.shape
    X = identity(n)
    r = 0
    for c in range(m):
        if r == n:
            break
        while True:
            column = E[r:, c]
            nonzero = [i for i in range(len(column)) if column[i] != 0]
            if not nonzero:
                break
            p = r + min(nonzero, key=lambda i: abs(column[i]))
            if p != r:
                E[[r, p]] = E[[p, r]]
                X[[r, p]] = X[[p, r]]
            cleared = True
            for i in range(r + 1, n):
                if E[i, c] != 0:
                    q = E[i, c] // E[r, c]
                    E[i] -= q * E[r]
                    X[i] -= q * X[r]
                    if E[i, c] != 0:
                        cleared = False
            if cleared:
                break
        if E[r, c] == 0:
            continue
        if E[r, c] < 0:
            E[r] = -E[r]
            X[r] = -X[r]
        r += 1
    return X, E, r


def trigonalize(M) -> Tuple[np.ndarray, np.ndarray]:
    """
    Unimodular trigonalization ``X M = D``.

    ``D`` is upper triangular with diagonal entries a_1, ..., a_d >= 1 and
    a_1 ... a_d = |det M|.
    """
    A = as_int_matrix(M)
    _require_square(A)
    X, D, r = unimodular_echelon(A)
    if r < A.shape[0]:
        raise SingularMatrixError("cannot trigonalize a singular matrix")
    return X, D


def content(v: Sequence[int]) -> int:
    """Nonnegative gcd of the entries."""
    return reduce(math.gcd, (int(a) for a in v), 0)


def primitivize(v) -> np.ndarray:
    """Divide ``v`` by the gcd of its entries, keeping the direction."""
    vector = as_int_vector(v)
    g = content(vector)
    if g == 0:
        raise DimensionError("cannot primitivize the zero vector")
    if g == 1:
        return vector
    return vector // g
