from hilbertcone.engine_module.cone_engine import ConeEngine
from hilbertcone.engine_module.report import (
    RunReport,
    emit,
    parse_report,
    render_json,
    render_text,
)

__all__ = [
    'ConeEngine',
    'RunReport',
    'emit',
    'parse_report',
    'render_json',
    'render_text',
]
