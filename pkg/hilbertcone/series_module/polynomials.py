"""
Integer polynomials in t (sympy Poly over ZZ) and truncated power series.
"""

import math
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

import sympy as sp

t = sp.Symbol("t")


def poly(coefficients) -> sp.Poly:
    """
    Build a polynomial from ``{exponent: coefficient}`` or an ascending list.
    """
    if isinstance(coefficients, dict):
        terms = {(int(e),): int(c) for e, c in coefficients.items() if c}
    else:
        terms = {(e,): int(c) for e, c in enumerate(coefficients) if c}
    if not terms:
        return sp.Poly(0, t, domain=sp.ZZ)
    return sp.Poly.from_dict(terms, t, domain=sp.ZZ)


def coefficients(p: sp.Poly) -> List[int]:
    """Ascending coefficient list; [0] for the zero polynomial."""
    if p.is_zero:
        return [0]
    return [int(c) for c in reversed(p.all_coeffs())]


def one_minus_t_power(e: int) -> sp.Poly:
    return poly({0: 1, e: -1})


def geometric_sum(step: int, top: int) -> sp.Poly:
    """(1 - t^top) / (1 - t^step) for step dividing top."""
    return poly({j * step: 1 for j in range(top // step)})


def divisors(n: int) -> List[int]:
    small = [k for k in range(1, math.isqrt(n) + 1) if n % k == 0]
    return sorted(set(small + [n // k for k in small]))


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> sp.Poly:
    """
    zeta_n with the normalization zeta_1 = 1 - t, so that
    1 - t^n is the product of zeta_k over the divisors k of n.
    """
    if n == 1:
        return one_minus_t_power(1)
    quotient = one_minus_t_power(n)
    for k in divisors(n)[:-1]:
        quotient = quotient.exquo(cyclotomic(k))
    return quotient


def product(factors: Iterable[sp.Poly]) -> sp.Poly:
    result = poly({0: 1})
    for factor in factors:
        result = result * factor
    return result


def expand(numerator: Sequence[int], denominator: Sequence[int], k_max: int) -> List[int]:
    """
    Power series coefficients 0..k_max of N(t) / prod (1 - t^s).
    """
    series = [0] * (k_max + 1)
    for e, c in enumerate(numerator):
        if e <= k_max:
            series[e] += int(c)
    for s in denominator:
        for k in range(s, k_max + 1):
            series[k] += series[k - s]
    return series


def format_polynomial(coeffs: Sequence[int]) -> str:
    """Human readable ascending form, e.g. ``1 - t + t^2``."""
    terms = []
    for e, c in enumerate(coeffs):
        if c == 0:
            continue
        magnitude = abs(c)
        if e == 0:
            body = str(magnitude)
        else:
            power = "t" if e == 1 else f"t^{e}"
            body = power if magnitude == 1 else f"{magnitude}*{power}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first_body = terms[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text


def format_denominator(exponents: Sequence[int]) -> str:
    grouped: Dict[int, int] = {}
    for e in exponents:
        grouped[e] = grouped.get(e, 0) + 1
    parts = []
    for e, multiplicity in sorted(grouped.items()):
        base = "(1 - t)" if e == 1 else f"(1 - t^{e})"
        parts.append(base if multiplicity == 1 else f"{base}^{multiplicity}")
    return "*".join(parts) if parts else "1"


def format_cyclotomic(factors: Sequence[Tuple[int, int]]) -> str:
    parts = []
    for order, multiplicity in factors:
        base = f"zeta_{order}"
        parts.append(base if multiplicity == 1 else f"{base}^{multiplicity}")
    return "*".join(parts) if parts else "1"
