"""
Generators for the bundled example problems.

Every generator returns problem text in the input format, so bundled
examples run through the same parser as files.
"""

import logging
from typing import Callable, Dict, List, Optional, Sequence

import sympy as sp

from hilbertcone.errors import ConfigurationError

logger = logging.getLogger(__name__)


def _format(rows: Sequence[Sequence[int]], kind: str, equations: Sequence[Sequence[int]] = (),
            grading: Optional[Sequence[int]] = None, title: str = "") -> str:
    d = len(rows[0])
    lines = [f"# {title}"] if title else []
    lines.append(f"{len(rows)} {d}")
    lines += [" ".join(str(a) for a in row) for row in rows]
    lines.append(kind)
    if equations:
        lines.append(f"equations {len(equations)}")
        lines += [" ".join(str(a) for a in row) for row in equations]
    if grading is not None:
        lines.append("grading")
        lines.append(" ".join(str(a) for a in grading))
    return "\n".join(lines) + "\n"


def _unit(d: int, i: int) -> List[int]:
    row = [0] * d
    row[i] = 1
    return row


def cross_polytope(dim: int) -> str:
    """Cone over the cross polytope: +-e_i lifted to height 1."""
    if dim < 1:
        raise ConfigurationError(f"cross polytope needs dimension >= 1, got {dim}")
    rows = []
    for i in range(dim):
        for sign in (1, -1):
            row = [0] * (dim + 1)
            row[i] = sign
            row[dim] = 1
            rows.append(row)
    return _format(rows, "gens", grading=_unit(dim + 1, dim), title=f"cross{dim}")


def magic_squares(n: int) -> str:
    """
    n x n magic squares: nonnegative entries, all row, column and both
    diagonal sums equal to the first row sum.
    """
    if n < 2:
        raise ConfigurationError(f"magic squares need n >= 2, got {n}")
    d = n * n

    def cells(positions) -> List[int]:
        row = [0] * d
        for r, c in positions:
            row[r * n + c] += 1
        return row

    first = cells((0, c) for c in range(n))
    sums = [cells((r, c) for c in range(n)) for r in range(1, n)]
    sums += [cells((r, c) for r in range(n)) for c in range(n)]
    sums.append(cells((i, i) for i in range(n)))
    sums.append(cells((i, n - 1 - i) for i in range(n)))
    equations = [[a - b for a, b in zip(row, first)] for row in sums]
    inequalities = [_unit(d, i) for i in range(d)]
    return _format(inequalities, "ineqs", equations=equations, title=f"{n}x{n} magic squares")


def cyclotomic_pairs(order: int) -> str:
    """
    Cone generated by (zeta^k, 1), k = 0, ..., order - 1, with zeta^k in the
    power basis 1, zeta, ..., zeta^(phi - 1) of Z[zeta], zeta a primitive
    root of unity of the given order.
    """
    if order < 2:
        raise ConfigurationError(f"cyclotomic example needs order >= 2, got {order}")
    x = sp.Symbol("x")
    modulus = sp.Poly(sp.cyclotomic_poly(order, x), x)
    phi = modulus.degree()
    rows = []
    for k in range(order):
        reduced = sp.Poly(x ** k, x).rem(modulus)
        coeffs = [int(c) for c in reversed(reduced.all_coeffs())]
        coeffs += [0] * (phi - len(coeffs))
        rows.append(coeffs + [1])
    return _format(rows, "gens", grading=_unit(phi + 1, phi), title=f"cyclo{order}")


def unit_cone(dim: int) -> str:
    """Positive orthant with the total degree."""
    if dim < 1:
        raise ConfigurationError(f"unit cone needs dimension >= 1, got {dim}")
    return _format([_unit(dim, i) for i in range(dim)], "gens", grading=[1] * dim, title=f"unit{dim}")


def toy23() -> str:
    """Rank-2 cone with generators of degrees 2 and 3."""
    return _format([[1, 0], [0, 1]], "gens", grading=[2, 3], title="degrees 2 and 3")


EXAMPLES: Dict[str, Callable[..., str]] = {
    "cross": cross_polytope,
    "magic": magic_squares,
    "cyclo": cyclotomic_pairs,
    "unit": unit_cone,
    "toy23": toy23,
}

DEFAULT_PARAMETERS: Dict[str, int] = {"cross": 10, "magic": 4, "cyclo": 36, "unit": 3}


def example_text(name: str, parameter: Optional[int] = None) -> str:
    """Problem text of a bundled example, e.g. ``example_text('magic', 4)``."""
    if name not in EXAMPLES:
        raise ConfigurationError(f"unknown example '{name}', choose from {sorted(EXAMPLES)}")
    if name == "toy23":
        return toy23()
    value = parameter if parameter is not None else DEFAULT_PARAMETERS[name]
    logger.debug(f"Generating example {name} {value}")
    return EXAMPLES[name](value)
