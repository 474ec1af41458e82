"""
Saturated sublattices of Z^d and the coordinate changes they induce.

A sublattice L of rank r is stored by a basis K (r x d, rows) and an
integral left inverse P (d x r) with K P = I_r. A point x of L has the
coordinates x P; a coordinate vector c maps back to c K.
"""

import logging
from dataclasses import dataclass

import numpy as np

from hilbertcone.errors import ConfigurationError, ConsistencyError
from hilbertcone.linalg_module.exact_linalg import (
    as_int_matrix, as_int_vector, identity, invert, unimodular_echelon,
)

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class Sublattice:
    basis: np.ndarray
    left_inverse: np.ndarray

    @classmethod
    def full(cls, d: int) -> "Sublattice":
        return cls(identity(d), identity(d))

    @property
    def rank(self) -> int:
        return self.basis.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[1]

    @property
    def is_full(self) -> bool:
        return self.rank == self.ambient_dim and bool(
            (self.basis == identity(self.rank)).all())

    def to_sublattice(self, x) -> np.ndarray:
        """Coordinates of the point ``x`` of L."""
        vector = as_int_vector(x)
        coords = vector.dot(self.left_inverse)
        if not (coords.dot(self.basis) == vector).all():
            raise ConfigurationError(f"vector {list(vector)} does not lie in the sublattice")
        return coords

    def to_sublattice_rows(self, M) -> np.ndarray:
        """
        Row-wise ``to_sublattice``.

        Args:
            M: Integer matrix whose rows lie in L.

        Returns:
            Matrix of coordinates, one row per row of ``M`` (0 x r if ``M`` is empty).
        """
        matrix = as_int_matrix(M)
        if matrix.shape[0] == 0:
            return np.zeros((0, self.rank), dtype=object)
        coords = matrix.dot(self.left_inverse)
        if not (coords.dot(self.basis) == matrix).all():
            raise ConfigurationError("some rows do not lie in the sublattice")
        return coords

    def from_sublattice(self, c) -> np.ndarray:
        return as_int_vector(c).dot(self.basis)

    def from_sublattice_rows(self, M) -> np.ndarray:
        """
        Row-wise ``from_sublattice``.

        Args:
            M: Matrix of coordinates in L, one point per row.

        Returns:
            The points in ambient coordinates (0 x d if ``M`` is empty).
        """
        matrix = as_int_matrix(M)
        if matrix.shape[0] == 0:
            return np.zeros((0, self.ambient_dim), dtype=object)
        return matrix.dot(self.basis)

    def restrict_form(self, form) -> np.ndarray:
        """The linear form ``form`` on Z^d, expressed on L."""
        return self.basis.dot(as_int_vector(form))

    def restrict_forms(self, M) -> np.ndarray:
        """Row-wise ``restrict_form``."""
        matrix = as_int_matrix(M)
        if matrix.shape[0] == 0:
            return np.zeros((0, self.rank), dtype=object)
        return matrix.dot(self.basis.T)

    def extend_form(self, form) -> np.ndarray:
        """An ambient linear form agreeing with ``form`` on L."""
        return self.left_inverse.dot(as_int_vector(form))

    def compose(self, inner: "Sublattice") -> "Sublattice":
        """``inner`` is given in the coordinates of ``self``."""
        return Sublattice(inner.basis.dot(self.basis),
                          self.left_inverse.dot(inner.left_inverse))


def kernel_lattice(E, d: int) -> Sublattice:
    """
    The lattice {x in Z^d : E x = 0} with a saturated basis.

    Args:
        E: Integer matrix with ``d`` columns (may have zero rows).
        d: Ambient dimension.
    """
    equations = as_int_matrix(E) if len(E) else np.zeros((0, d), dtype=object)
    if equations.shape[1] != d:
        raise ConfigurationError(f"equations have {equations.shape[1]} columns, expected {d}")
    if equations.shape[0] == 0:
        return Sublattice.full(d)
    X, _, r = unimodular_echelon(equations.T)
    inverse = invert(X)
    if inverse.denom != 1:
        raise ConsistencyError("row transformation is not unimodular")
    K = X[r:]
    P = inverse.solution[:, r:]
    logger.debug(f"Kernel of {equations.shape[0]} equations has rank {d - r}")
    return Sublattice(K.copy(), P.copy())


def span_lattice(G) -> Sublattice:
    """The saturation span(G) ∩ Z^d of the row lattice of ``G``."""
    generators = as_int_matrix(G)
    d = generators.shape[1]
    X, _, r = unimodular_echelon(generators.T)
    if r == d:
        return Sublattice.full(d)
    complement = X[r:]
    return kernel_lattice(complement, d)
