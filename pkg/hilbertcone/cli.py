#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Command Line Interface for hilbertcone
"""

import argparse
import logging
import os
import sys
from typing import List, Optional

from hilbertcone.config import CONFIG_FILE, DEFAULT_CONFIG, EngineConfig, load_config, save_config
from hilbertcone.data_module.bundled import EXAMPLES, example_text
from hilbertcone.data_module.input_parser import ProblemSpec, Task, parse_input
from hilbertcone.engine_module.cone_engine import ConeEngine
from hilbertcone.engine_module.report import emit
from hilbertcone.errors import (
    ConfigurationError, ConsistencyError, HilbertConeError, ParseError,
)

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[logging.StreamHandler()]
)
logger = logging.getLogger('hilbertcone')

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PARSE = 2
EXIT_CONFIGURATION = 3
EXIT_CONSISTENCY = 4

TASK_FLAGS = [
    ("supp", Task.SUPP, "Support hyperplanes and extreme rays"),
    ("tri", Task.TRI, "Triangulation size and determinant sum"),
    ("volume", Task.VOLUME, "Multiplicity (normalized volume)"),
    ("series", Task.SERIES, "Hilbert series and quasipolynomial"),
    ("basis", Task.BASIS, "Hilbert basis"),
    ("deg1", Task.DEG1, "Lattice points of degree 1"),
]


def exit_code(error: Exception) -> int:
    if isinstance(error, ParseError):
        return EXIT_PARSE
    if isinstance(error, ConfigurationError):
        return EXIT_CONFIGURATION
    if isinstance(error, ConsistencyError):
        return EXIT_CONSISTENCY
    return EXIT_FAILURE


def engine_config(args) -> EngineConfig:
    """Configuration file values overridden by command line flags."""
    values = load_config(args.config)
    overrides = {
        'threads': args.threads,
        'supp_complexity_bound': args.threshold_supp,
        'tri_complexity_bound': args.threshold_tri,
        'simplex_buffer_size': args.buffer_size,
        'output_format': args.format,
    }
    for key, value in overrides.items():
        if value is not None:
            values[key] = value
    if args.buffer_size is not None:
        values['memory_bound'] = args.buffer_size
    if args.partial:
        values['partial_triangulation'] = True
    if args.verify:
        values['verify'] = True
    return EngineConfig.from_dict(values)


def selected_tasks(args) -> List[Task]:
    return [task for name, task, _ in TASK_FLAGS if getattr(args, name)]


def write_triangulation(path: str, triangulation) -> None:
    with open(path, 'w') as f:
        for key, det_value in triangulation:
            f.write(" ".join(str(i) for i in key) + f" {det_value}\n")
    logger.info(f"Wrote {len(triangulation)} simplices to {path}")


def compute(spec: ProblemSpec, args) -> int:
    """Run the engine on ``spec`` and write the report."""
    config = engine_config(args)
    spec = spec.with_tasks(selected_tasks(args))
    engine = ConeEngine(config, keep_triangulation=bool(args.keep_triangulation))
    report = engine.run(spec)
    if args.keep_triangulation:
        write_triangulation(args.keep_triangulation, engine.triangulation)
    data = emit(report, config.output_format)
    if args.output:
        with open(args.output, 'wb') as f:
            f.write(data)
        logger.info(f"Report written to {args.output}")
    else:
        sys.stdout.write(data.decode('utf-8'))
    return EXIT_OK


def compute_command(args) -> int:
    if args.input == '-':
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, 'r') as f:
                text = f.read()
        except OSError as e:
            logger.error(f"Cannot read input file {args.input}: {str(e)}")
            return EXIT_FAILURE
    return compute(parse_input(text), args)


def example_command(args) -> int:
    text = example_text(args.name, args.parameter)
    if args.print_input:
        sys.stdout.write(text)
        return EXIT_OK
    return compute(parse_input(text), args)


def setup_command(args) -> int:
    """Write the default configuration file."""
    path = args.config or CONFIG_FILE
    if os.path.exists(path) and not args.force:
        logger.info(f"Configuration already exists at {path}; use --force to overwrite")
        return EXIT_OK
    save_config(DEFAULT_CONFIG, path)
    logger.info(f"Created default configuration at {path}")
    return EXIT_OK


def _run_options() -> argparse.ArgumentParser:
    options = argparse.ArgumentParser(add_help=False)
    tasks = options.add_argument_group("tasks (default: everything applicable)")
    for name, _, help_text in TASK_FLAGS:
        tasks.add_argument(f"--{name}", action="store_true", help=help_text)
    strategy = options.add_argument_group("strategy")
    strategy.add_argument("--threads", "-x", type=int, help="Number of worker threads")
    strategy.add_argument("--partial", action="store_true",
                          help="Partial triangulation (skip height 1 pyramids)")
    strategy.add_argument("--threshold-supp", type=int,
                          help="Hyperplane pair count that switches to recursive pyramids")
    strategy.add_argument("--threshold-tri", type=int,
                          help="Facet test count that switches to stored pyramids")
    strategy.add_argument("--buffer-size", type=int, help="Simplices buffered before evaluation")
    output = options.add_argument_group("output")
    output.add_argument("--keep-triangulation", metavar="FILE",
                        help="Write the triangulation to FILE")
    output.add_argument("--verify", action="store_true", help="Run internal cross-checks")
    output.add_argument("--format", choices=["text", "json"], help="Report format")
    output.add_argument("--output", "-o", help="Write the report to a file")
    return options


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="hilbertcone: exact computations on rational cones")
    parser.add_argument("--config", "-c", default=None,
                        help=f"Path to configuration file (default {CONFIG_FILE})")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", "-v", action="store_true", help="Debug logging")
    verbosity.add_argument("--quiet", "-q", action="store_true", help="Warnings and errors only")

    subparsers = parser.add_subparsers(dest="command", help="Command to execute")
    options = _run_options()

    compute_parser = subparsers.add_parser("compute", parents=[options], help="Compute from an input file")
    compute_parser.add_argument("input", help="Input file, '-' for stdin")

    example_parser = subparsers.add_parser("example", parents=[options], help="Run a bundled example")
    example_parser.add_argument("name", choices=sorted(EXAMPLES))
    example_parser.add_argument("parameter", type=int, nargs="?",
                                help="Dimension, size or order of the example")
    example_parser.add_argument("--print-input", action="store_true",
                                help="Print the example input instead of running it")

    setup_parser = subparsers.add_parser("setup", help="Write the default configuration")
    setup_parser.add_argument("--force", "-f", action="store_true",
                              help="Force overwrite existing configuration")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the CLI."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    elif args.quiet:
        logging.getLogger().setLevel(logging.WARNING)

    if not args.command:
        parser.print_help()
        return EXIT_OK

    commands = {
        "compute": compute_command,
        "example": example_command,
        "setup": setup_command,
    }
    try:
        return commands[args.command](args)
    except HilbertConeError as e:
        logger.error(f"{type(e).__name__}: {str(e)}")
        return exit_code(e)


if __name__ == "__main__":
    sys.exit(main())
