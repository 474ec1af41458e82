"""
Hilbert series: accumulation by denominator class and the raw,
cyclotomic and standard presentations.
"""

import logging
import math
import threading
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import sympy as sp

from hilbertcone.series_module.polynomials import (
    coefficients, cyclotomic, divisors, expand, format_cyclotomic, format_denominator,
    format_polynomial, geometric_sum, one_minus_t_power, poly, product,
)

logger = logging.getLogger(__name__)

ClassKey = Tuple[int, ...]


@dataclass
class RawSeries:
    numerator: List[int]
    denominator: List[int]

    def __str__(self):
        return f"({format_polynomial(self.numerator)}) / ({format_denominator(self.denominator)})"


@dataclass
class CyclotomicSeries:
    numerator: List[int]
    factors: List[Tuple[int, int]]    # (order, multiplicity), sorted by order

    @property
    def period(self) -> int:
        return math.lcm(*[order for order, _ in self.factors]) if self.factors else 1

    def __str__(self):
        return f"({format_polynomial(self.numerator)}) / ({format_cyclotomic(self.factors)})"


@dataclass
class StandardSeries:
    numerator: List[int]
    denominator: List[int]

    def __str__(self):
        return f"({format_polynomial(self.numerator)}) / ({format_denominator(self.denominator)})"


SeriesForm = Union[RawSeries, CyclotomicSeries, StandardSeries]


def accumulate(class_map: Dict[ClassKey, Counter], degrees: Sequence[int],
               numerator: Dict[int, int]) -> None:
    """Add ``numerator`` into the class keyed by the sorted ``degrees``."""
    key = tuple(sorted(int(g) for g in degrees))
    target = class_map.setdefault(key, Counter())
    for exponent, coefficient in numerator.items():
        if exponent < 0:
            raise ValueError(f"negative exponent {exponent} in class {key}")
        target[exponent] += coefficient


class SeriesAccumulator:
    """Denominator-class map fed from several threads."""

    def __init__(self):
        self.classes: Dict[ClassKey, Counter] = {}
        self._lock = threading.Lock()

    def add(self, degrees: Sequence[int], numerator: Dict[int, int]) -> None:
        with self._lock:
            accumulate(self.classes, degrees, numerator)

    def merge(self, shard: Dict[ClassKey, Counter]) -> None:
        with self._lock:
            for key, numerator in shard.items():
                accumulate(self.classes, key, numerator)


def _class_order(key: ClassKey) -> Tuple[int, ...]:
    return tuple(sorted(key, reverse=True))


def sum_raw(class_map: Dict[ClassKey, Counter]) -> RawSeries:
    """
    Sum all class fractions over one common denominator.

    The denominator is a list of factors 1 - t^e, extended only when a
    class factor 1 - t^g divides none of the unused factors. Classes with
    large degrees go first so that small factors fit into them.
    """
    denominator: List[int] = []
    total = poly({})
    for key in sorted(class_map, key=_class_order, reverse=True):
        numerator = poly(dict(class_map[key]))
        if numerator.is_zero:
            continue
        used = [False] * len(denominator)
        multiplier = poly({0: 1})
        for g in sorted(key, reverse=True):
            match = None
            for j, e in enumerate(denominator):
                if not used[j] and e % g == 0 and (match is None or e < denominator[match]):
                    match = j
            if match is None:
                denominator.append(g)
                used.append(True)
                total = total * one_minus_t_power(g)
            else:
                used[match] = True
                multiplier = multiplier * geometric_sum(g, denominator[match])
        for j, e in enumerate(denominator):
            if not used[j]:
                multiplier = multiplier * one_minus_t_power(e)
        total = total + numerator * multiplier
    return RawSeries(coefficients(total), sorted(denominator))


def _cyclotomic_multiplicities(exponents: Sequence[int]) -> Counter:
    multiplicities = Counter()
    for s in exponents:
        for k in divisors(s):
            multiplicities[k] += 1
    return multiplicities


def cyclotomic_reduce(raw: RawSeries) -> CyclotomicSeries:
    """
    Factor the denominator into cyclotomic polynomials and cancel every
    factor that divides the numerator.
    """
    multiplicities = _cyclotomic_multiplicities(raw.denominator)
    numerator = poly(raw.numerator)
    for order in sorted(multiplicities):
        zeta = cyclotomic(order)
        while multiplicities[order] > 0 and not numerator.is_zero:
            quotient, remainder = numerator.div(zeta, auto=False)
            if not remainder.is_zero:
                break
            numerator = quotient
            multiplicities[order] -= 1
    factors = [(order, m) for order, m in sorted(multiplicities.items()) if m > 0]
    return CyclotomicSeries(coefficients(numerator), factors)


def _level_exponents(factors: Sequence[Tuple[int, int]], levels: int) -> List[int]:
    """e_1 <= ... <= e_levels: e for level j is the lcm of the orders of multiplicity >= j."""
    exponents = []
    for threshold in range(levels, 0, -1):
        orders = [order for order, m in factors if m >= threshold]
        exponents.append(math.lcm(*orders) if orders else 1)
    return exponents


def _rewrite(cyc: CyclotomicSeries, exponents: Sequence[int]) -> sp.Poly:
    numerator = poly(cyc.numerator) * product(one_minus_t_power(e) for e in exponents)
    divisor = product(cyclotomic(order) ** m for order, m in cyc.factors)
    return numerator.exquo(divisor)


def standardize(cyc: CyclotomicSeries, d: int, numerator_cap: int = 10_000) -> Optional[StandardSeries]:
    """
    Rewrite over d factors 1 - t^e_i.

    Returns None if some cyclotomic factor has multiplicity above d or the
    numerator degree exceeds ``numerator_cap``.
    """
    top = max((m for _, m in cyc.factors), default=0)
    if top > d:
        logger.warning(f"Cyclotomic multiplicity {top} exceeds rank {d}; no standard form")
        return None
    exponents = _level_exponents(cyc.factors, d)
    divisor_degree = sum(cyclotomic(order).degree() * m for order, m in cyc.factors)
    if len(cyc.numerator) - 1 + sum(exponents) - divisor_degree > numerator_cap:
        logger.warning(f"Standard numerator would exceed degree {numerator_cap}; skipped")
        return None
    numerator = _rewrite(cyc, exponents)
    return StandardSeries(coefficients(numerator), exponents)


def power_denominator_form(series: SeriesForm) -> Tuple[List[int], List[int]]:
    """Numerator and exponents s_i of an equal series N / prod (1 - t^s_i)."""
    if isinstance(series, CyclotomicSeries):
        levels = max((m for _, m in series.factors), default=0)
        exponents = _level_exponents(series.factors, levels)
        return coefficients(_rewrite(series, exponents)), exponents
    return list(series.numerator), list(series.denominator)


def series_coefficients(series: SeriesForm, k_max: int) -> List[int]:
    """H(C, 0), ..., H(C, k_max)."""
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    numerator, exponents = power_denominator_form(series)
    return expand(numerator, exponents, k_max)
