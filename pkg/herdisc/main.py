#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
herdisc: Discrepancy Minimization with Hereditary Guarantees

Main entry point for the command-line interface.

This module parses the subcommands (generate, minimize, baseline,
lower-bound, experiment, verify, config), sets up logging and maps errors
to exit codes: 0 on success, 1 when an algorithm fails, 2 on usage, parse
or contract errors. Summary lines go to stdout; log output goes to stderr
and the log file.
"""

import argparse
import json
import os
import sys
import time
import logging

import numpy as np

from .config import (
    Config,
    display_config,
    setup_logging,
    HerdiscError,
    ConfigError,
    ContractViolationError,
    FileProcessingError,
    OracleBudgetError,
)

logger = logging.getLogger(__name__)

USAGE_ERRORS = (FileProcessingError, ContractViolationError, OracleBudgetError, ConfigError)


def format_value(value):
    """Shortest positional decimal for a summary line."""
    return np.format_float_positional(float(value), trim='-')


def format_seconds(seconds):
    return format_value(round(seconds, Config.TIMING_DECIMALS))


def build_parser():
    """
    Build the argument parser with one subparser per command.

    Returns:
        argparse.ArgumentParser
    """
    parser = argparse.ArgumentParser(
        prog="herdisc",
        description="herdisc: Discrepancy Minimization with Hereditary Guarantees",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  herdisc generate --type corner2d --m 200 --n 200 --seed 1 --out a.mat
  herdisc minimize --matrix a.mat --out x.col --report run.json
  herdisc baseline --matrix a.mat --mode sample-many --budget-seconds 5
  herdisc lower-bound --matrix a.mat
  herdisc verify --matrix a.mat --coloring x.col
  herdisc experiment --sizes 200x200 --seeds 1,2,3 --out results.csv
  herdisc config                    # Display configuration
        """
    )
    parser.add_argument("--debug", action="store_true",
                        help="Enable debug mode with detailed logging")
    subparsers = parser.add_subparsers(dest="command", required=True)

    generate = subparsers.add_parser("generate", help="Generate a benchmark matrix")
    generate.add_argument("--type", required=True, choices=Config.MATRIX_KINDS,
                          help="Matrix kind")
    generate.add_argument("--m", type=int, required=True, help="Number of rows")
    generate.add_argument("--n", type=int, required=True, help="Number of columns")
    generate.add_argument("--seed", type=int, default=Config.DEFAULT_SEED, help="Seed")
    generate.add_argument("--out", required=True, help="Output matrix file")

    minimize = subparsers.add_parser("minimize", help="Run HereditaryMinimize on a matrix")
    minimize.add_argument("--matrix", required=True, help="Input matrix file")
    minimize.add_argument("--seed", type=int, default=Config.DEFAULT_SEED, help="Seed")
    minimize.add_argument("--out", help="Output coloring file")
    minimize.add_argument("--report", help="Output JSON run report")

    baseline = subparsers.add_parser("baseline", help="Run the Sample or SampleMany baseline")
    baseline.add_argument("--matrix", required=True, help="Input matrix file")
    baseline.add_argument("--mode", choices=["sample", "sample-many"], default="sample",
                          help="Baseline algorithm")
    baseline.add_argument("--budget-seconds", type=float, help="SampleMany time budget")
    baseline.add_argument("--budget-trials", type=int, help="SampleMany trial budget")
    baseline.add_argument("--seed", type=int, default=Config.DEFAULT_SEED, help="Seed")
    baseline.add_argument("--out", help="Output coloring file")

    lower_bound = subparsers.add_parser("lower-bound", help="Spectral lower bound on herdisc")
    lower_bound.add_argument("--matrix", required=True, help="Input matrix file")

    experiment = subparsers.add_parser("experiment", help="Run the benchmark experiment")
    experiment.add_argument("--sizes", default=Config.DEFAULT_SIZES,
                            help="Comma-separated MxN sizes, or 'benchmark'")
    experiment.add_argument("--types", default=",".join(Config.DEFAULT_TYPES),
                            help="Comma-separated matrix kinds")
    experiment.add_argument("--seeds", default=",".join(str(s) for s in Config.DEFAULT_SEEDS),
                            help="Comma-separated seeds")
    experiment.add_argument("--budget-trials", type=int,
                            help="Give SampleMany a fixed trial budget instead of matched time")
    experiment.add_argument("--workers", type=int, default=Config.EXPERIMENT_WORKERS,
                            help="Worker threads")
    experiment.add_argument("--out", default="results.csv", help="Output table file")
    experiment.add_argument("--format", choices=Config.REPORT_FORMATS, default="csv",
                            help="Output table format")
    experiment.add_argument("--strict", action="store_true",
                            help="Exit with status 1 if any run failed")

    verify = subparsers.add_parser("verify", help="Compute disc(A, x) of a coloring")
    verify.add_argument("--matrix", required=True, help="Input matrix file")
    verify.add_argument("--coloring", required=True, help="Input coloring file")

    subparsers.add_parser("config", help="Display configuration settings")
    return parser


def _parse_list(text, key, cast=str):
    items = [item.strip() for item in str(text).split(',') if item.strip()]
    if not items:
        error_msg = f"Empty list for --{key}"
        logger.error(error_msg)
        raise ConfigError(error_msg, config_key=key, config_value=text)
    try:
        return [cast(item) for item in items]
    except ValueError as e:
        error_msg = f"Malformed value in --{key}: {text}"
        logger.error(error_msg)
        raise ConfigError(error_msg, config_key=key, config_value=text) from e


def cmd_generate(args):
    from .core.instances import InstanceSpec, generate
    from .utils.file_io import write_matrix

    A = generate(InstanceSpec(kind=args.type, m=args.m, n=args.n, seed=args.seed))
    write_matrix(A, args.out)
    logger.debug(f"Generated {args.type} {args.m}x{args.n} (seed {args.seed}) to {args.out}")
    return 0


def cmd_minimize(args):
    """Run HereditaryMinimize, write the coloring and report, print the summary line."""
    from .core.coloring import hereditary_minimize
    from .core.linalg import RandomSource
    from .core.structure import herdisc_lower_bound
    from .utils.file_io import read_matrix, write_coloring

    A = read_matrix(args.matrix)
    coloring, report = hereditary_minimize(A, RandomSource(args.seed))

    if args.out:
        write_coloring(coloring, args.out)
    if args.report:
        bound = herdisc_lower_bound(A)
        payload = report.to_dict()
        payload.update({
            'matrix': os.path.abspath(args.matrix),
            'm': int(A.shape[0]),
            'n': int(A.shape[1]),
            'lower_bound': {'value': bound.value, 'k': bound.argmax_k},
        })
        try:
            with open(args.report, 'w', encoding='utf-8') as f:
                json.dump(payload, f, indent=2)
        except OSError as e:
            error_msg = f"Error writing run report {args.report}: {str(e)}"
            logger.error(error_msg)
            raise FileProcessingError(error_msg, filename=args.report) from e

    print(f"disc={format_value(report.final_disc)} bound={format_value(report.total_bound)} "
          f"elapsed={format_seconds(report.total_elapsed)}")
    return 0


def cmd_baseline(args):
    from .core.bench import SampleBudget, baseline_sample, baseline_sample_many
    from .core.linalg import RandomSource
    from .utils.file_io import read_matrix, write_coloring

    A = read_matrix(args.matrix)
    rng = RandomSource(args.seed)

    if args.mode == 'sample':
        started = time.perf_counter()
        coloring, disc = baseline_sample(A, rng)
        trials, elapsed = 1, time.perf_counter() - started
    else:
        trials_budget = args.budget_trials
        if args.budget_seconds is None and trials_budget is None:
            trials_budget = Config.SAMPLE_MANY_DEFAULT_TRIALS
        result = baseline_sample_many(
            A, SampleBudget(seconds=args.budget_seconds, trials=trials_budget), rng)
        coloring, disc, trials = result
        elapsed = result.elapsed

    if args.out:
        write_coloring(coloring, args.out)
    print(f"disc={format_value(disc)} trials={trials} elapsed={format_seconds(elapsed)}")
    return 0


def cmd_lower_bound(args):
    from .core.structure import herdisc_lower_bound
    from .utils.file_io import read_matrix

    bound = herdisc_lower_bound(read_matrix(args.matrix))
    print(f"lower_bound={format_value(bound.value)} k={bound.argmax_k}")
    return 0


def _markdown_path(path):
    root, _ = os.path.splitext(path)
    return root + ".md"


def cmd_experiment(args):
    """Run the experiment, write the table in --format plus a markdown copy."""
    from .core.bench import ExperimentConfig, run_experiment
    from .core.instances import InstanceSpec
    from .core.report import emit_report

    sizes = Config.parse_sizes(args.sizes)
    kinds = _parse_list(args.types, "types")
    unknown = [k for k in kinds if k not in Config.MATRIX_KINDS]
    if unknown:
        error_msg = f"Unknown matrix kinds {unknown}. Valid kinds: {Config.MATRIX_KINDS}"
        logger.error(error_msg)
        raise ConfigError(error_msg, config_key="types", config_value=args.types)
    seeds = _parse_list(args.seeds, "seeds", int)

    specs = [InstanceSpec(kind=kind, m=m, n=n) for (m, n) in sizes for kind in kinds]
    config = ExperimentConfig(
        specs=specs,
        seeds=seeds,
        budget_mode='trial-count' if args.budget_trials is not None else 'matched-time',
        trial_budget=args.budget_trials or Config.SAMPLE_MANY_DEFAULT_TRIALS,
        workers=args.workers,
    )

    logger.info(f"Running {len(specs)} instance classes x {len(seeds)} seeds")
    rows = run_experiment(config)

    emit_report(rows, args.format, args.out)
    if args.format != 'markdown':
        emit_report(rows, 'markdown', _markdown_path(args.out))

    failed = [row for row in rows if row.error is not None]
    logger.info(f"Wrote {len(rows)} rows to {args.out} ({len(failed)} failed)")
    if failed and args.strict:
        logger.error(f"{len(failed)} runs failed")
        return 1
    return 0


def cmd_verify(args):
    from .core.coloring import disc_inf
    from .utils.file_io import read_coloring, read_matrix

    A = read_matrix(args.matrix)
    coloring = read_coloring(args.coloring)
    print(f"disc={format_value(disc_inf(A, coloring.signs))}")
    return 0


def cmd_config(args):
    display_config(Config)
    return 0


COMMANDS = {
    'generate': cmd_generate,
    'minimize': cmd_minimize,
    'baseline': cmd_baseline,
    'lower-bound': cmd_lower_bound,
    'experiment': cmd_experiment,
    'verify': cmd_verify,
    'config': cmd_config,
}


def main(argv=None):
    """
    Main function to run the herdisc command line.

    Args:
        argv: Argument list (defaults to sys.argv[1:])

    Returns:
        Process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    setup_logging(debug=args.debug)
    logger.debug(f"Command: {args.command}, arguments: {vars(args)}")

    try:
        return COMMANDS[args.command](args)
    except KeyboardInterrupt:
        logger.info("\nProcess interrupted by user.")
        return 1
    except USAGE_ERRORS as e:
        logger.error(f"herdisc error: {str(e)}")
        logger.debug("Error details:", exc_info=True)
        return 2
    except HerdiscError as e:
        logger.error(f"herdisc error: {str(e)}")
        logger.debug("Error details:", exc_info=True)
        return 1
    except Exception as e:
        logger.error(f"Unexpected error: {str(e)}")
        logger.debug("Error details:", exc_info=True)
        return 1


if __name__ == "__main__":
    sys.exit(main())
