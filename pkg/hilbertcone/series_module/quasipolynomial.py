"""
Hilbert quasipolynomial: for k = r mod period, H(C, k) is a polynomial
in k of degree d - 1 whose coefficients depend only on r.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import sympy as sp

from hilbertcone.errors import ConsistencyError
from hilbertcone.series_module.hilbert_series import CyclotomicSeries, series_coefficients

logger = logging.getLogger(__name__)


@dataclass
class Quasipolynomial:
    """
    Coefficients over one common positive denominator:
    q_j(r) = numerators[r][j] / denom.
    """
    period: int
    denom: int
    numerators: List[List[int]]

    @property
    def dim(self) -> int:
        return len(self.numerators[0])

    def coefficient(self, residue: int, j: int) -> Fraction:
        return Fraction(self.numerators[residue % self.period][j], self.denom)

    def value(self, k: int) -> int:
        row = self.numerators[k % self.period]
        total = sum(c * k ** j for j, c in enumerate(row))
        if total % self.denom:
            raise ConsistencyError(f"quasipolynomial value at {k} is not integral")
        return total // self.denom

    def leading_coefficients(self) -> List[Fraction]:
        return [self.coefficient(r, self.dim - 1) for r in range(self.period)]

    def lines(self) -> List[str]:
        text = []
        for r, row in enumerate(self.numerators):
            text.append(f"{r}: " + " ".join(str(c) for c in row))
        text.append(f"denominator {self.denom}")
        return text


def _sample_inverse(d: int) -> Tuple[List[List[int]], int]:
    """
    Inverse of the Vandermonde matrix V[j][i] = j^i (j, i < d), scaled to integers.

    Returns:
        (W, L) with V^-1 = W / L.
    """
    inverse = sp.Matrix(d, d, lambda j, i: sp.Integer(j) ** i).inv()
    scale = math.lcm(*[int(sp.fraction(a)[1]) for a in inverse])
    return [[int(a * scale) for a in inverse.row(i)] for i in range(d)], scale


def _residue_rows(stream: List[int], period: int, d: int) -> Tuple[List[List[int]], int]:
    """
    Integer coefficient rows of all residues over one common denominator.

    For k = r + period * s the polynomial in s is fixed by its values at
    s = 0..d-1, so one inverse serves every residue; expanding
    ((k - r) / period)^i in k then gives the row of r.
    """
    W, scale = _sample_inverse(d)
    binomials = [[math.comb(i, m) for m in range(d)] for i in range(d)]
    period_powers = [period ** (d - 1 - i) for i in range(d)]
    rows = []
    for r in range(period):
        values = [stream[r + j * period] for j in range(d)]
        in_s = [sum(w * v for w, v in zip(W[i], values)) * period_powers[i] for i in range(d)]
        row = []
        for m in range(d):
            total = 0
            shift = 1
            for i in range(m, d):
                total += in_s[i] * binomials[i][m] * shift
                shift *= -r
            row.append(total)
        rows.append(row)
    return rows, scale * period ** (d - 1)


def quasipolynomial(cyc: CyclotomicSeries, d: int,
                    period_cap: int = 1_000_000) -> Optional[Quasipolynomial]:
    """
    Interpolate the quasipolynomial of ``cyc`` residue by residue.

    Returns None (with a warning) when the period exceeds ``period_cap``.
    Raises ConsistencyError if d further values per residue are not reproduced.
    """
    period = cyc.period
    if period > period_cap:
        logger.warning(f"Quasipolynomial period {period} exceeds cap {period_cap}; skipped")
        return None
    stream = series_coefficients(cyc, 2 * d * period)
    rows, denom = _residue_rows(stream, period, d)
    g = math.gcd(denom, *[c for row in rows for c in row])
    denom //= g
    result = Quasipolynomial(period, denom, [[c // g for c in row] for row in rows])
    check_reproduction(result, stream, start=d * period)
    logger.debug(f"Quasipolynomial of period {period}, denominator {denom}")
    return result


def check_reproduction(q: Quasipolynomial, stream: List[int], start: int = 0) -> None:
    for k in range(start, len(stream)):
        if q.value(k) != stream[k]:
            raise ConsistencyError(
                f"quasipolynomial gives {q.value(k)} at k={k}, series gives {stream[k]}")


def multiplicity_check(q: Quasipolynomial, volume: Fraction, d: int) -> bool:
    """The leading coefficient is constant and equals volume / (d - 1)!."""
    expected = Fraction(volume) / math.factorial(d - 1)
    return all(c == expected for c in q.leading_coefficients())
