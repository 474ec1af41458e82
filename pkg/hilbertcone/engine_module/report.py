"""
Run report and its text and JSON renderings.

The JSON rendering writes every integer as a decimal string, so numbers
of any size survive a round trip.
"""

import json
from dataclasses import dataclass, field, fields
from fractions import Fraction
from typing import Any, Dict, List, Optional

from hilbertcone.series_module.polynomials import (
    format_cyclotomic, format_denominator, format_polynomial,
)

Vector = List[int]

# Counters that do not depend on strategy switches triggered by buffer sizes.
STABLE_COUNTERS = ("simplices", "unimodular", "nongeneric")


def _vectors_out(rows: Optional[List[Vector]]):
    if rows is None:
        return None
    return [[str(a) for a in row] for row in rows]


def _vectors_in(rows):
    if rows is None:
        return None
    return [[int(a) for a in row] for row in rows]


def _fraction_out(value: Optional[Fraction]) -> Optional[str]:
    return None if value is None else str(value)


def _fraction_in(value: Optional[str]) -> Optional[Fraction]:
    return None if value is None else Fraction(value)


def _series_out(series: Optional[Dict[str, List[int]]]):
    if series is None:
        return None
    return {key: [str(a) for a in values] for key, values in series.items()}


def _series_in(series):
    if series is None:
        return None
    return {key: [int(a) for a in values] for key, values in series.items()}


def _counters_out(counters):
    if isinstance(counters, dict):
        return {str(key): _counters_out(value) for key, value in counters.items()}
    return str(counters)


def _counters_in(counters):
    if isinstance(counters, dict):
        return {key: _counters_in(value) for key, value in counters.items()}
    return int(counters)


@dataclass
class RunReport:
    """
    Everything a run computed. Absent results are None.

    Series entries are dicts of integer lists: raw and standard forms use
    keys ``numerator`` and ``denominator`` (exponents of 1 - t^e), the
    cyclotomic form ``numerator``, ``orders`` and ``multiplicities``.
    """
    ambient_dim: int
    rank: int
    tasks: List[str]
    generators: List[Vector]
    sublattice: Optional[List[Vector]] = None
    grading: Optional[Vector] = None
    grading_implicit: bool = False
    grading_denominator: int = 1
    extreme_rays: Optional[List[Vector]] = None
    support_hyperplanes: Optional[List[Vector]] = None
    triangulation_size: Optional[int] = None
    determinant_sum: Optional[int] = None
    volume: Optional[Fraction] = None
    degree1_points: Optional[List[Vector]] = None
    hilbert_basis: Optional[List[Vector]] = None
    raw_series: Optional[Dict[str, List[int]]] = None
    cyclotomic_series: Optional[Dict[str, List[int]]] = None
    standard_series: Optional[Dict[str, List[int]]] = None
    quasipolynomial_period: Optional[int] = None
    quasipolynomial_denominator: Optional[int] = None
    quasipolynomial: Optional[List[Vector]] = None
    multiplicity_check: Optional[bool] = None
    instrumentation: Dict[str, Any] = field(default_factory=dict)
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def counts(self) -> Dict[str, Optional[int]]:
        def size(rows):
            return None if rows is None else len(rows)
        return {
            "extreme_rays": size(self.extreme_rays),
            "support_hyperplanes": size(self.support_hyperplanes),
            "hilbert_basis": size(self.hilbert_basis),
            "degree1_points": size(self.degree1_points),
            "triangulation_size": self.triangulation_size,
            "stanley_components": self.determinant_sum,
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ambient_dim": str(self.ambient_dim),
            "rank": str(self.rank),
            "tasks": list(self.tasks),
            "generators": _vectors_out(self.generators),
            "sublattice": _vectors_out(self.sublattice),
            "grading": None if self.grading is None else [str(a) for a in self.grading],
            "grading_implicit": self.grading_implicit,
            "grading_denominator": str(self.grading_denominator),
            "extreme_rays": _vectors_out(self.extreme_rays),
            "support_hyperplanes": _vectors_out(self.support_hyperplanes),
            "triangulation_size": None if self.triangulation_size is None else str(self.triangulation_size),
            "determinant_sum": None if self.determinant_sum is None else str(self.determinant_sum),
            "volume": _fraction_out(self.volume),
            "degree1_points": _vectors_out(self.degree1_points),
            "hilbert_basis": _vectors_out(self.hilbert_basis),
            "raw_series": _series_out(self.raw_series),
            "cyclotomic_series": _series_out(self.cyclotomic_series),
            "standard_series": _series_out(self.standard_series),
            "quasipolynomial_period": None if self.quasipolynomial_period is None
            else str(self.quasipolynomial_period),
            "quasipolynomial_denominator": None if self.quasipolynomial_denominator is None
            else str(self.quasipolynomial_denominator),
            "quasipolynomial": _vectors_out(self.quasipolynomial),
            "multiplicity_check": self.multiplicity_check,
            "instrumentation": _counters_out(self.instrumentation),
            "timings": {k: round(v, 6) for k, v in self.timings.items()},
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunReport":
        def number(key):
            value = data.get(key)
            return None if value is None else int(value)

        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"unknown report fields {unknown}")
        return cls(
            ambient_dim=int(data["ambient_dim"]),
            rank=int(data["rank"]),
            tasks=list(data["tasks"]),
            generators=_vectors_in(data["generators"]),
            sublattice=_vectors_in(data.get("sublattice")),
            grading=None if data.get("grading") is None else [int(a) for a in data["grading"]],
            grading_implicit=bool(data.get("grading_implicit", False)),
            grading_denominator=int(data.get("grading_denominator", 1)),
            extreme_rays=_vectors_in(data.get("extreme_rays")),
            support_hyperplanes=_vectors_in(data.get("support_hyperplanes")),
            triangulation_size=number("triangulation_size"),
            determinant_sum=number("determinant_sum"),
            volume=_fraction_in(data.get("volume")),
            degree1_points=_vectors_in(data.get("degree1_points")),
            hilbert_basis=_vectors_in(data.get("hilbert_basis")),
            raw_series=_series_in(data.get("raw_series")),
            cyclotomic_series=_series_in(data.get("cyclotomic_series")),
            standard_series=_series_in(data.get("standard_series")),
            quasipolynomial_period=number("quasipolynomial_period"),
            quasipolynomial_denominator=number("quasipolynomial_denominator"),
            quasipolynomial=_vectors_in(data.get("quasipolynomial")),
            multiplicity_check=data.get("multiplicity_check"),
            instrumentation=_counters_in(data.get("instrumentation", {})),
            timings={k: float(v) for k, v in data.get("timings", {}).items()},
        )

    def without_timings(self) -> Dict[str, Any]:
        """Report fields that do not depend on the thread count."""
        data = self.to_dict()
        data.pop("timings")
        data["instrumentation"] = {key: value for key, value in data["instrumentation"].items()
                                   if key in STABLE_COUNTERS}
        return data


def _rows_text(rows: List[Vector]) -> List[str]:
    return [" ".join(str(a) for a in row) for row in rows]


def _series_text(series: Dict[str, List[int]], cyclotomic: bool = False) -> str:
    numerator = format_polynomial(series["numerator"])
    if cyclotomic:
        denominator = format_cyclotomic(list(zip(series["orders"], series["multiplicities"])))
    else:
        denominator = format_denominator(series["denominator"])
    return f"({numerator}) / ({denominator})"


def render_text(report: RunReport) -> str:
    """Stable line-oriented sections."""
    lines = [f"ambient dimension {report.ambient_dim}", f"rank {report.rank}",
             f"tasks {' '.join(report.tasks)}"]
    if report.sublattice is not None:
        lines.append("")
        lines.append(f"sublattice basis {len(report.sublattice)}")
        lines += _rows_text(report.sublattice)
    if report.grading is not None:
        lines.append("")
        label = "implicit grading" if report.grading_implicit else "grading"
        lines.append(label)
        lines.append(" ".join(str(a) for a in report.grading))
        if report.grading_denominator != 1:
            lines.append(f"grading denominator {report.grading_denominator}")
    lines.append("")
    lines.append(f"generators {len(report.generators)}")
    lines += _rows_text(report.generators)

    for title, rows in (("extreme rays", report.extreme_rays),
                        ("support hyperplanes", report.support_hyperplanes),
                        ("hilbert basis elements", report.hilbert_basis),
                        ("degree 1 points", report.degree1_points)):
        if rows is not None:
            lines.append("")
            lines.append(f"{title} {len(rows)}")
            lines += _rows_text(rows)

    if report.triangulation_size is not None:
        lines.append("")
        lines.append(f"triangulation size {report.triangulation_size}")
        lines.append(f"determinant sum {report.determinant_sum}")
    if report.volume is not None:
        lines.append(f"multiplicity {report.volume}")
    if report.raw_series is not None:
        lines.append("")
        lines.append("hilbert series")
        lines.append("raw " + _series_text(report.raw_series))
        lines.append("cyclotomic " + _series_text(report.cyclotomic_series, cyclotomic=True))
        if report.standard_series is not None:
            lines.append("standard " + _series_text(report.standard_series))
    if report.quasipolynomial is not None:
        lines.append("")
        lines.append(f"quasipolynomial period {report.quasipolynomial_period}")
        for r, row in enumerate(report.quasipolynomial):
            lines.append(f"{r}: " + " ".join(str(a) for a in row))
        lines.append(f"common denominator {report.quasipolynomial_denominator}")
    if report.multiplicity_check is not None:
        lines.append(f"multiplicity check {'passed' if report.multiplicity_check else 'FAILED'}")
    if report.instrumentation:
        lines.append("")
        lines.append("statistics")
        for key, value in report.instrumentation.items():
            lines.append(f"{key} {value}")
    if report.timings:
        lines.append("")
        lines.append("timings")
        for key, value in report.timings.items():
            lines.append(f"{key} {value:.3f}s")
    return "\n".join(lines) + "\n"


def render_json(report: RunReport) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"


def emit(report: RunReport, output_format: str = "text") -> bytes:
    if output_format == "json":
        return render_json(report).encode("utf-8")
    if output_format == "text":
        return render_text(report).encode("utf-8")
    raise ValueError(f"unknown output format '{output_format}'")


def parse_report(data: bytes) -> RunReport:
    return RunReport.from_dict(json.loads(data.decode("utf-8")))
