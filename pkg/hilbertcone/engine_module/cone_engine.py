"""
Orchestrates a run: input preparation, grading, triangulation with
evaluation, series assembly and Hilbert basis reduction.
"""

import logging
import time
from contextlib import contextmanager
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from hilbertcone.basis_module.hilbert_basis import CandidatePool, global_reduce
from hilbertcone.config import EngineConfig
from hilbertcone.data_module.input_parser import (
    GRADED_TASKS, PARTIAL_TASKS, InputKind, ProblemSpec, Task,
)
from hilbertcone.errors import ConfigurationError, ConsistencyError
from hilbertcone.evaluation_module.collector import EvaluationCollector
from hilbertcone.evaluation_module.simplicial_evaluator import EvaluationTasks
from hilbertcone.geometry_module.cone_state import (
    ConeState, Grading, LinearForm, detect_pointed, extreme_rays, implicit_grading,
)
from hilbertcone.geometry_module.fourier_motzkin import dualize_inequalities, support_hyperplanes
from hilbertcone.linalg_module.exact_linalg import as_int_matrix, content, primitivize, rank
from hilbertcone.linalg_module.sublattice import Sublattice, kernel_lattice, span_lattice
from hilbertcone.parallel import ParallelContext
from hilbertcone.series_module.hilbert_series import (
    cyclotomic_reduce, series_coefficients, standardize, sum_raw,
)
from hilbertcone.series_module.quasipolynomial import (
    check_reproduction, multiplicity_check, quasipolynomial,
)
from hilbertcone.statistics import RunStatistics
from hilbertcone.triangulation_module.simplicial_cone import EvaluationBuffer
from hilbertcone.triangulation_module.triangulator import Triangulator

from hilbertcone.engine_module.report import RunReport

logger = logging.getLogger(__name__)

VERIFY_EXPANSION = 50
TRIANGULATION_TASKS = frozenset({Task.TRI, Task.VOLUME, Task.SERIES, Task.BASIS, Task.DEG1})


def _rows(matrix) -> List[List[int]]:
    return [[int(a) for a in row] for row in matrix]


def _dedupe_rows(matrix: np.ndarray) -> np.ndarray:
    """Drop zero rows and repeated rows, keeping the first occurrence."""
    seen = set()
    kept = []
    for row in matrix:
        key = tuple(int(a) for a in row)
        if not any(key) or key in seen:
            continue
        seen.add(key)
        kept.append(key)
    if not kept:
        raise ConfigurationError("no nonzero generators")
    return as_int_matrix(kept)


class ConeEngine:
    """
    Runs the computations requested by a ProblemSpec.

    Args:
        config: Engine settings; defaults if omitted.
        keep_triangulation: Keep the (key, det) list of the triangulation
            so it can be written out after the run.
    """

    def __init__(self, config: Optional[EngineConfig] = None, keep_triangulation: bool = False):
        self.config = config or EngineConfig()
        self.config.validate()
        self.keep_triangulation = keep_triangulation
        self.parallel = ParallelContext(self.config.threads)
        self.statistics = RunStatistics()
        self.timings: Dict[str, float] = {}
        self.triangulation: List[Tuple[Tuple[int, ...], int]] = []

    @contextmanager
    def _stage(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = self.timings.get(name, 0.0) + time.perf_counter() - start

    def run(self, spec: ProblemSpec) -> RunReport:
        logger.info(f"Starting run: {spec.matrix.shape[0]} {spec.kind.value} in dimension {spec.dim}")
        self.statistics = RunStatistics()
        self.timings = {}
        self.triangulation = []

        tasks = self._select_tasks(spec)
        with self._stage("preparation"):
            lattice, generators = self._prepare(spec)
        r = lattice.rank
        logger.info(f"Working with {generators.shape[0]} generators of rank {r}")

        grading, grading_denominator, generators, prelim = self._grade(spec, lattice, generators)
        if grading is None:
            dropped = tasks & GRADED_TASKS
            if dropped:
                if spec.tasks_explicit:
                    raise ConfigurationError(
                        f"tasks {sorted(t.value for t in dropped)} need a grading and none was found")
                logger.warning(f"No grading: skipping {sorted(t.value for t in dropped)}")
                tasks = tasks - dropped
        if not tasks:
            raise ConfigurationError("nothing left to compute")

        report = RunReport(
            ambient_dim=spec.dim,
            rank=r,
            tasks=sorted(t.value for t in tasks),
            generators=_rows(lattice.from_sublattice_rows(generators)),
            sublattice=None if lattice.is_full else _rows(lattice.basis),
        )
        if grading is not None:
            report.grading = [int(a) for a in lattice.extend_form(grading.form.vector)]
            report.grading_implicit = grading.implicit
            report.grading_denominator = grading_denominator

        collector = None
        if tasks & TRIANGULATION_TASKS:
            with self._stage("triangulation"):
                hyperplanes, collector = self._triangulate(generators, grading, tasks)
        elif prelim is not None:
            hyperplanes = list(prelim.hyperplanes)
        else:
            with self._stage("support hyperplanes"):
                state, _ = support_hyperplanes(generators, self.parallel)
                hyperplanes = list(state.hyperplanes)
        hyperplanes = sorted(set(hyperplanes), key=lambda h: h.coeffs)
        logger.info(f"Support hyperplanes: {len(hyperplanes)}")

        if self.config.verify and tasks & TRIANGULATION_TASKS:
            self._verify_hyperplanes(generators, hyperplanes)

        state = ConeState(generators, hyperplanes=hyperplanes)
        if not detect_pointed(state):
            raise ConfigurationError("the cone is not pointed")
        flags = extreme_rays(state)
        rays = sorted(tuple(int(a) for a in primitivize(x)) for x, f in zip(generators, flags) if f)
        report.extreme_rays = sorted(_rows(lattice.from_sublattice_rows(rays)))
        report.support_hyperplanes = sorted(
            _rows(as_int_matrix([lattice.extend_form(h.vector) for h in hyperplanes])))

        if collector is not None:
            self._collect(report, collector, lattice, generators, grading, hyperplanes, tasks, r)

        report.instrumentation = self.statistics.to_dict()
        report.timings = dict(self.timings)
        logger.info("Run finished")
        return report

    def _select_tasks(self, spec: ProblemSpec):
        tasks = frozenset(spec.tasks)
        if self.config.partial_triangulation and not tasks <= PARTIAL_TASKS:
            if spec.tasks_explicit:
                raise ConfigurationError(
                    "partial triangulation supports only supp, basis and deg1")
            tasks = tasks & PARTIAL_TASKS
            logger.warning(f"Partial triangulation: restricting tasks to {sorted(t.value for t in tasks)}")
        return tasks

    def _prepare(self, spec: ProblemSpec) -> Tuple[Sublattice, np.ndarray]:
        """Working lattice and generators in its coordinates."""
        d = spec.dim
        if spec.kind == InputKind.INEQUALITIES:
            lattice = kernel_lattice(spec.equations, d)
            if lattice.rank == 0:
                raise ConfigurationError("the equations admit only the zero vector")
            restricted = lattice.restrict_forms(spec.matrix)
            generators = dualize_inequalities(restricted, self.parallel)
            return lattice, _dedupe_rows(generators)

        if len(spec.equations):
            raise ConfigurationError("equations are only supported with inequality input")
        generators = _dedupe_rows(as_int_matrix(spec.matrix))
        if rank(generators) == d:
            return Sublattice.full(d), generators
        lattice = span_lattice(generators)
        logger.info(f"Generators span a sublattice of rank {lattice.rank}")
        return lattice, lattice.to_sublattice_rows(generators)

    def _grade(self, spec: ProblemSpec, lattice: Sublattice, generators: np.ndarray):
        """
        Grading and the generators to triangulate.

        With an explicit grading all generators are used, sorted by degree.
        Otherwise a Fourier-Motzkin pass finds the extreme rays, which are
        then used instead in input order; their common degree defines the
        implicit grading.
        """
        if spec.grading is not None:
            form = lattice.restrict_form(spec.grading)
            g = content(form)
            if g == 0:
                raise ConfigurationError("grading vanishes on the sublattice")
            if g > 1:
                logger.warning(f"Grading restricted to the sublattice is divisible by {g}; divided")
            linear = LinearForm.from_vector(form)
            grading = Grading.for_generators(linear, generators)
            order = sorted(range(generators.shape[0]), key=lambda j: grading.degrees[j])
            ordered = generators[order]
            return Grading.for_generators(linear, ordered), g, ordered, None

        with self._stage("support hyperplanes"):
            state, order = support_hyperplanes(generators, self.parallel)
        if not detect_pointed(state):
            raise ConfigurationError("the cone is not pointed")
        flags = extreme_rays(state)
        extreme = sorted(position for position, f in zip(order, flags) if f)
        rays = as_int_matrix([tuple(int(a) for a in primitivize(generators[position]))
                              for position in extreme])
        grading = implicit_grading(rays)
        if grading is None:
            logger.info("No implicit grading")
            return None, 1, rays, state
        logger.info(f"Implicit grading {grading.form}")
        return grading, 1, rays, state

    def _triangulate(self, generators: np.ndarray, grading: Optional[Grading], tasks):
        cfg = self.config
        degrees = grading.degrees if grading is not None else None
        evaluation = EvaluationTasks(
            volume=Task.VOLUME in tasks,
            series=Task.SERIES in tasks,
            basis=Task.BASIS in tasks,
            deg1=Task.DEG1 in tasks,
            verify=cfg.verify,
        )
        collector = EvaluationCollector(generators, degrees, evaluation, self.parallel,
                                        self.statistics, self.keep_triangulation)
        buffer = EvaluationBuffer(collector.evaluate_batch, cfg.simplex_buffer_size,
                                  cfg.pyramid_buffer_size, self.parallel, self.statistics)
        need_dets = bool(tasks & {Task.TRI, Task.VOLUME}) or cfg.verify
        triangulator = Triangulator(generators, buffer, cfg.thresholds(), self.parallel,
                                    need_dets=need_dets, partial=cfg.partial_triangulation,
                                    statistics=self.statistics,
                                    on_first_simplex=collector.set_order_vector)
        hyperplanes = triangulator.run()
        logger.info(f"Triangulation: {collector.simplex_count} simplices, "
                    f"determinant sum {collector.det_sum}")
        return hyperplanes, collector

    def _verify_hyperplanes(self, generators: np.ndarray, hyperplanes: Sequence[LinearForm]) -> None:
        state, _ = support_hyperplanes(generators, self.parallel)
        plain = sorted(set(state.hyperplanes), key=lambda h: h.coeffs)
        if plain != list(hyperplanes):
            raise ConsistencyError(
                f"triangulation found {len(hyperplanes)} hyperplanes, plain pass {len(plain)}")

    def _collect(self, report: RunReport, collector: EvaluationCollector, lattice: Sublattice,
                 generators: np.ndarray, grading: Optional[Grading],
                 hyperplanes: List[LinearForm], tasks, r: int) -> None:
        if Task.TRI in tasks or Task.VOLUME in tasks:
            report.triangulation_size = collector.simplex_count
            report.determinant_sum = collector.det_sum
        if Task.VOLUME in tasks or Task.SERIES in tasks:
            report.volume = collector.volume
        if self.keep_triangulation:
            self.triangulation = collector.sorted_triangulation()

        if Task.SERIES in tasks:
            with self._stage("series"):
                self._series(report, collector, r)

        if Task.DEG1 in tasks:
            points = set(collector.degree1)
            points.update(tuple(int(a) for a in x)
                          for x, degree in zip(generators, grading.degrees) if degree == 1)
            report.degree1_points = sorted(_rows(lattice.from_sublattice_rows(sorted(points))))

        if Task.BASIS in tasks:
            with self._stage("hilbert basis"):
                candidates = set(collector.candidates)
                candidates.update(tuple(int(a) for a in x) for x in generators)
                pool = CandidatePool(candidates, hyperplanes,
                                     grading.form if grading is not None else None)
                basis = global_reduce(pool, self.parallel)
            report.hilbert_basis = sorted(_rows(lattice.from_sublattice_rows(basis)))

    def _series(self, report: RunReport, collector: EvaluationCollector, r: int) -> None:
        cfg = self.config
        raw = sum_raw(collector.series.classes)
        cyc = cyclotomic_reduce(raw)
        standard = standardize(cyc, r, cfg.standard_numerator_cap)
        report.raw_series = {"numerator": raw.numerator, "denominator": raw.denominator}
        report.cyclotomic_series = {
            "numerator": cyc.numerator,
            "orders": [order for order, _ in cyc.factors],
            "multiplicities": [m for _, m in cyc.factors],
        }
        if standard is not None:
            report.standard_series = {"numerator": standard.numerator,
                                      "denominator": standard.denominator}
        logger.info(f"Hilbert series: {cyc}")

        if cfg.verify:
            forms = [raw, cyc] + ([standard] if standard is not None else [])
            streams = [series_coefficients(form, VERIFY_EXPANSION) for form in forms]
            if any(stream != streams[0] for stream in streams[1:]):
                raise ConsistencyError("series representations expand differently")

        quasi = quasipolynomial(cyc, r, cfg.quasipolynomial_period_cap)
        if quasi is None:
            return
        report.quasipolynomial_period = quasi.period
        report.quasipolynomial_denominator = quasi.denom
        report.quasipolynomial = quasi.numerators
        if cfg.verify:
            check_reproduction(quasi, series_coefficients(cyc, 3 * quasi.period + r))
        passed = multiplicity_check(quasi, collector.volume, r)
        report.multiplicity_check = passed
        if not passed:
            raise ConsistencyError(
                f"leading quasipolynomial coefficients {quasi.leading_coefficients()} "
                f"do not match multiplicity {collector.volume} / ({r - 1})!")
