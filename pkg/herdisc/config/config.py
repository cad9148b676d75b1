#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Configuration module for herdisc.

This module provides central settings for:
1. Numerical tolerances used by the projection and eigenvalue routines
2. Partial coloring retry policy
3. Exhaustive oracle budgets
4. Benchmark harness defaults (sizes, matrix kinds, seeds, workers)
5. Report layout and log file management

The Config class implements a singleton pattern to ensure consistent
settings across all library modules.
"""

import os
import logging
from typing import Dict, List, Any, Tuple

from ..config.exceptions import ConfigError

logger = logging.getLogger(__name__)

class Config:
    """
    Central configuration settings for herdisc with singleton pattern.

    Settings are class attributes so they can be read without an instance;
    `get_instance()` exists for call sites that prefer an object.

    Attributes:
        RANK_TOLERANCE: Relative residual norm below which a vector is in span(V)
        PARTIAL_COLORING_RETRY_LIMIT: Failed PartialColoring attempts per round
        DEFAULT_SIZES: Benchmark sizes used when none are given

    Example:
        >>> config = Config.get_instance()
        >>> config.parse_sizes("200x200,1000x500")
        [(200, 200), (1000, 500)]
    """

    # Singleton instance
    _instance = None

    #############################################################################
    #                           Numerical Tolerances
    #############################################################################
    # ||s'|| <= RANK_TOLERANCE * max(1, ||s||) counts as a zero residual
    RANK_TOLERANCE = 1e-9

    # Maximum allowed deviation from orthonormality of basis rows
    ORTHONORMALITY_TOLERANCE = 1e-8

    # Relative asymmetry accepted by the symmetric eigensolver
    SYMMETRY_TOLERANCE = 1e-10

    # Coordinates of g below this magnitude never limit the step cap
    STEP_CAP_FLOOR = 1e-12

    # |x_i + v_i + g_i| >= 1 - FREEZE_TOLERANCE freezes coordinate i
    FREEZE_TOLERANCE = 1e-9

    # Box slack accepted for fractional colorings
    BOX_TOLERANCE = 1e-9

    # Eigenvectors with eigenvalue below EIGEN_RELATIVE_FLOOR * mu_1 are skipped
    EIGEN_RELATIVE_FLOOR = 1e-12


    #############################################################################
    #                           Coloring Engine
    #############################################################################
    # Failed PartialColoring attempts allowed per HereditaryMinimize round
    PARTIAL_COLORING_RETRY_LIMIT = 300

    # Gaussian steps drawn and projected per block in PartialColoring
    WALK_BATCH_SIZE = 256

    # Default seed for every randomized command
    DEFAULT_SEED = 0


    #############################################################################
    #                           Exhaustive Oracles
    #############################################################################
    ORACLE_MAX_N_DISC = 20
    ORACLE_MAX_N_HERDISC = 10

    # Colorings evaluated per vectorized Gray-code chunk
    ORACLE_CHUNK_SIZE = 4096


    #############################################################################
    #                           Benchmark Harness
    #############################################################################
    MATRIX_KINDS = ['uniform', 'corner2d', 'halfspace2d', 'zero']
    ALGORITHMS = ['hereditary', 'sample', 'sample_many']

    DEFAULT_SIZES = "200x200"
    DEFAULT_TYPES = ['uniform', 'corner2d', 'halfspace2d']
    DEFAULT_SEEDS = [1, 2, 3, 4, 5]

    # Every size of the published benchmark table
    BENCHMARK_SIZES = [(200, 200), (1000, 1000), (4000, 4000), (10000, 2000)]

    # Colorings drawn per matrix product in SampleMany
    SAMPLE_BATCH_SIZE = 64

    # SampleMany trials when no matched time is available
    SAMPLE_MANY_DEFAULT_TRIALS = 1000

    # Worker threads for experiment rows
    EXPERIMENT_WORKERS = 1

    # Timing resolution of reports (milliseconds)
    TIMING_DECIMALS = 3


    #############################################################################
    #                           Reports and Files
    #############################################################################
    REPORT_COLUMNS = [
        'algorithm', 'kind', 'm', 'n', 'seed', 'disc', 'elapsed_s', 'trials', 'retries'
    ]
    REPORT_FORMATS = ['csv', 'json', 'markdown', 'xlsx']

    ALGORITHM_LABELS = {
        'hereditary': 'HereditaryMinimize',
        'sample': 'Sample',
        'sample_many': 'SampleMany',
    }
    KIND_LABELS = {
        'uniform': 'Uniform',
        'corner2d': '2D Corner',
        'halfspace2d': '2D Halfspace',
        'zero': 'Zero',
    }

    # Log files (None means ~/.herdisc/logs)
    LOG_DIR = None
    LOG_MAX_FILES = 10

    def __init__(self):
        """Initialize Config instance with default values."""
        pass

    @classmethod
    def get_instance(cls) -> 'Config':
        """
        Get the singleton instance of Config.

        Returns:
            Config: Singleton instance
        """
        if cls._instance is None:
            cls._instance = cls()
        return cls._instance

    @classmethod
    def get_oracle_budget(cls, kind: str) -> int:
        """
        Get the enumeration width cap for an exhaustive oracle.

        Args:
            kind: Oracle name ('disc' or 'herdisc')

        Returns:
            Maximum number of columns the oracle enumerates

        Raises:
            ConfigError: If the oracle kind is unknown
        """
        budgets = {
            'disc': cls.ORACLE_MAX_N_DISC,
            'herdisc': cls.ORACLE_MAX_N_HERDISC,
        }

        if kind not in budgets:
            error_msg = f"Unknown oracle kind: {kind}. Valid kinds: {list(budgets.keys())}"
            logger.error(error_msg)
            raise ConfigError(error_msg, config_key="oracle_kind")

        return budgets[kind]

    @classmethod
    def parse_sizes(cls, text: str) -> List[Tuple[int, int]]:
        """
        Parse a comma-separated list of matrix sizes.

        Sizes are written "MxN" (rows x columns), mirroring the "Matrix Size"
        column of the benchmark table. The preset "benchmark" expands to every
        size of that table.

        Args:
            text: Size list such as "200x200,1000x1000" or "benchmark"

        Returns:
            List of (m, n) tuples in input order

        Raises:
            ConfigError: If any entry is malformed or non-positive

        Example:
            >>> Config.parse_sizes("50x40")
            [(50, 40)]
        """
        if text is None or not str(text).strip():
            error_msg = "Empty size list"
            logger.error(error_msg)
            raise ConfigError(error_msg, config_key="sizes", config_value=text)

        if str(text).strip().lower() == 'benchmark':
            return list(cls.BENCHMARK_SIZES)

        sizes = []
        for token in str(text).split(','):
            token = token.strip().lower()
            parts = token.split('x')
            if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
                error_msg = f"Malformed size '{token}', expected MxN"
                logger.error(error_msg)
                raise ConfigError(error_msg, config_key="sizes", config_value=text)

            m, n = int(parts[0]), int(parts[1])
            if m < 1 or n < 1:
                error_msg = f"Size '{token}' must have positive dimensions"
                logger.error(error_msg)
                raise ConfigError(error_msg, config_key="sizes", config_value=text)
            sizes.append((m, n))

        logger.debug(f"Parsed sizes: {sizes}")
        return sizes

    @classmethod
    def get_log_dir(cls) -> str:
        """
        Get the directory log files are written to.

        Returns:
            Absolute path of the log directory
        """
        if cls.LOG_DIR:
            return str(cls.LOG_DIR)
        return os.path.join(os.path.expanduser("~"), ".herdisc", "logs")

    @classmethod
    def get_all_settings(cls) -> Dict[str, Any]:
        """
        Get all settings as a dictionary.

        Returns:
            Dictionary of all serializable settings
        """
        settings = {}

        # Add all class variables that don't start with underscore
        for key in dir(cls):
            if not key.startswith('_') and not callable(getattr(cls, key)):
                value = getattr(cls, key)
                # Only include serializable types
                if isinstance(value, (str, int, float, bool, list, dict, tuple)) or value is None:
                    settings[key] = value

        return settings
