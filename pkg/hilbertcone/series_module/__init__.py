from hilbertcone.series_module.hilbert_series import (
    CyclotomicSeries,
    RawSeries,
    SeriesAccumulator,
    StandardSeries,
    accumulate,
    cyclotomic_reduce,
    power_denominator_form,
    series_coefficients,
    standardize,
    sum_raw,
)
from hilbertcone.series_module.polynomials import cyclotomic, expand
from hilbertcone.series_module.quasipolynomial import (
    Quasipolynomial,
    check_reproduction,
    multiplicity_check,
    quasipolynomial,
)

__all__ = [
    'CyclotomicSeries',
    'Quasipolynomial',
    'RawSeries',
    'SeriesAccumulator',
    'StandardSeries',
    'accumulate',
    'check_reproduction',
    'cyclotomic',
    'cyclotomic_reduce',
    'expand',
    'multiplicity_check',
    'power_denominator_form',
    'quasipolynomial',
    'series_coefficients',
    'standardize',
    'sum_raw',
]
