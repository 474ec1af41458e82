"""
Order vector and the excluded-facet classification of semi-open simplicial cones.
"""

from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np

from hilbertcone.linalg_module.exact_linalg import as_int_matrix, as_int_vector, solve_multi_rhs


@dataclass(eq=False)
class Indicator:
    """Solution of G^T I = O_C as integer numerators over a positive denominator."""
    values: np.ndarray
    denom: int

    @property
    def zero_indices(self) -> List[int]:
        return [i for i, v in enumerate(self.values) if v == 0]

    def sign(self, i: int) -> int:
        v = self.values[i]
        return (v > 0) - (v < 0)


@dataclass(eq=False)
class OrderVector:
    """
    Interior point O_C of the first simplicial cone.

    Comparisons against a hyperplane that contains O_C are decided for the
    perturbed point O_C + e_1 t + e_2 t^2 + ... with t infinitesimal, so
    the side is the sign of the first nonzero coefficient of the form.
    """
    base: np.ndarray

    @classmethod
    def from_generators(cls, G) -> "OrderVector":
        matrix = as_int_matrix(G)
        return cls(as_int_vector(matrix.sum(axis=0)))

    @staticmethod
    def perturbed_side(form: Sequence[int]) -> int:
        for a in form:
            if a != 0:
                return 1 if a > 0 else -1
        raise ValueError("zero form has no side")


def indicator(G, order_vector: OrderVector) -> Indicator:
    """Solve G^T I = O_C exactly."""
    result = solve_multi_rhs(as_int_matrix(G).T, order_vector.base)
    return Indicator(result.column(0).copy(), result.denom)


def resolve_nongeneric(G, zero_indices: Sequence[int]) -> Dict[int, bool]:
    """
    Classify the facets of sigma that contain O_C.

    The support form of the facet opposite v_i solves G x = e_i. The facet
    is excluded iff the perturbed order vector lies on its negative side.

    Returns:
        Mapping facet index -> True if excluded.
    """
    if not zero_indices:
        return {}
    matrix = as_int_matrix(G)
    d = matrix.shape[0]
    rhs = np.zeros((d, len(zero_indices)), dtype=object)
    for column, i in enumerate(zero_indices):
        rhs[i, column] = 1
    result = solve_multi_rhs(matrix, rhs)
    return {
        i: OrderVector.perturbed_side(result.column(column)) < 0
        for column, i in enumerate(zero_indices)
    }


def excluded_facets(ind: Indicator, nongeneric: Dict[int, bool]) -> List[int]:
    """Facets of sigma excluded from its semi-open version, sorted."""
    excluded = []
    for i in range(len(ind.values)):
        s = ind.sign(i)
        if s < 0 or (s == 0 and nongeneric.get(i, False)):
            excluded.append(i)
    return excluded
