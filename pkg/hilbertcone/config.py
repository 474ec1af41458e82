"""
Configuration: built-in defaults, overridden by a JSON file, overridden
by command line flags.
"""

import json
import logging
import os
from dataclasses import dataclass, fields
from typing import Any, Dict, Optional

from hilbertcone.errors import ConfigurationError
from hilbertcone.triangulation_module.simplicial_cone import StrategyThresholds

logger = logging.getLogger(__name__)

CONFIG_DIR = os.path.expanduser('~/.hilbertcone')
CONFIG_FILE = os.path.join(CONFIG_DIR, 'config.json')

DEFAULT_CONFIG: Dict[str, Any] = {
    'threads': 1,
    'supp_complexity_bound': 1_000_000,
    'tri_complexity_bound': 100_000,
    'simplex_buffer_size': 500_000,
    'pyramid_buffer_size': 200_000,
    'memory_bound': 500_000,
    'standard_numerator_cap': 10_000,
    'quasipolynomial_period_cap': 1_000_000,
    'partial_triangulation': False,
    'verify': False,
    'output_format': 'text',
}

OUTPUT_FORMATS = ('text', 'json')


def load_config(path: Optional[str] = None) -> Dict[str, Any]:
    """Defaults merged with the JSON file at ``path`` (or the user configuration)."""
    config = dict(DEFAULT_CONFIG)
    path = path or CONFIG_FILE
    if not os.path.exists(path):
        return config
    try:
        with open(path, 'r') as f:
            stored = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"Error reading configuration {path}: {str(e)}")
        raise ConfigurationError(f"unreadable configuration file {path}") from e
    unknown = sorted(set(stored) - set(DEFAULT_CONFIG))
    if unknown:
        raise ConfigurationError(f"unknown configuration keys {unknown} in {path}")
    config.update(stored)
    return config


def save_config(config: Dict[str, Any], path: Optional[str] = None) -> str:
    path = path or CONFIG_FILE
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w') as f:
        json.dump(config, f, indent=2)
    return path


@dataclass
class EngineConfig:
    threads: int = 1
    supp_complexity_bound: int = 1_000_000
    tri_complexity_bound: int = 100_000
    simplex_buffer_size: int = 500_000
    pyramid_buffer_size: int = 200_000
    memory_bound: int = 500_000
    standard_numerator_cap: int = 10_000
    quasipolynomial_period_cap: int = 1_000_000
    partial_triangulation: bool = False
    verify: bool = False
    output_format: str = 'text'

    @classmethod
    def from_dict(cls, values: Dict[str, Any]) -> "EngineConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(values) - known)
        if unknown:
            raise ConfigurationError(f"unknown configuration keys {unknown}")
        config = cls(**values)
        config.validate()
        return config

    def validate(self) -> None:
        if int(self.threads) < 1:
            raise ConfigurationError(f"threads must be >= 1, got {self.threads}")
        for name in ('supp_complexity_bound', 'tri_complexity_bound', 'simplex_buffer_size',
                     'pyramid_buffer_size', 'memory_bound'):
            if int(getattr(self, name)) < 0:
                raise ConfigurationError(f"{name} must be nonnegative, got {getattr(self, name)}")
        for name in ('standard_numerator_cap', 'quasipolynomial_period_cap'):
            if int(getattr(self, name)) < 1:
                raise ConfigurationError(f"{name} must be positive, got {getattr(self, name)}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigurationError(
                f"output format '{self.output_format}' not in {list(OUTPUT_FORMATS)}")

    def thresholds(self) -> StrategyThresholds:
        return StrategyThresholds(
            supp_complexity_bound=int(self.supp_complexity_bound),
            tri_complexity_bound=int(self.tri_complexity_bound),
            simplex_buffer_size=int(self.simplex_buffer_size),
            pyramid_buffer_size=int(self.pyramid_buffer_size),
            memory_bound=int(self.memory_bound),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}
