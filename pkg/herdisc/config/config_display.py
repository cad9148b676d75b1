#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Configuration display module for herdisc.

Prints the Config settings grouped by category with color-coded output,
so tolerances and harness defaults can be checked before a run.
"""

import textwrap
import colorama
import logging
from colorama import Fore, Style

logger = logging.getLogger(__name__)

def display_config(config_cls):
    """
    Display all configuration settings in a structured, easy-to-read format.

    Args:
        config_cls: The Config class to display settings from

    Example:
        >>> from herdisc.config import Config
        >>> display_config(Config)
    """
    logger.debug("Starting configuration display")

    colorama.init()

    settings = config_cls.get_all_settings()
    logger.debug(f"Retrieved {len(settings)} configuration settings")

    print(f"\n{Fore.WHITE}{'='*80}{Style.RESET_ALL}")
    print(f"{Fore.WHITE}{'herdisc Configuration Settings':^80}{Style.RESET_ALL}")
    print(f"{Fore.WHITE}{'='*80}{Style.RESET_ALL}\n")

    categories = _get_setting_categories()

    categorized_keys = []
    for keys in categories.values():
        categorized_keys.extend(keys)

    other_keys = [key for key in settings.keys() if key not in categorized_keys]
    if other_keys:
        categories["Other"] = other_keys

    for category, keys in categories.items():
        print(f"{Fore.WHITE}{category}{Style.RESET_ALL}")
        print(f"{Fore.WHITE}{'-' * len(category)}{Style.RESET_ALL}")

        for key in keys:
            if key not in settings:
                continue
            formatted_value = _format_setting_value(settings[key])
            print(f"{Fore.CYAN}{key}{Style.RESET_ALL}: {formatted_value}")
            explanation = _get_setting_explanation(key)
            if explanation:
                print(f"  {Fore.YELLOW}→ {explanation}{Style.RESET_ALL}")
        print()

    print(f"{Fore.WHITE}{'='*80}{Style.RESET_ALL}\n")
    logger.debug("Configuration display completed successfully")

def _get_setting_categories():
    """
    Get organized categories of configuration settings.

    Returns:
        Dictionary mapping category names to lists of setting keys
    """
    return {
        "Numerical Tolerances": [
            "RANK_TOLERANCE", "ORTHONORMALITY_TOLERANCE", "SYMMETRY_TOLERANCE",
            "STEP_CAP_FLOOR", "FREEZE_TOLERANCE", "BOX_TOLERANCE", "EIGEN_RELATIVE_FLOOR"
        ],
        "Coloring Engine": [
            "PARTIAL_COLORING_RETRY_LIMIT", "WALK_BATCH_SIZE", "DEFAULT_SEED"
        ],
        "Exhaustive Oracles": [
            "ORACLE_MAX_N_DISC", "ORACLE_MAX_N_HERDISC", "ORACLE_CHUNK_SIZE"
        ],
        "Benchmark Harness": [
            "MATRIX_KINDS", "ALGORITHMS", "DEFAULT_SIZES", "DEFAULT_TYPES", "DEFAULT_SEEDS",
            "BENCHMARK_SIZES", "SAMPLE_BATCH_SIZE", "SAMPLE_MANY_DEFAULT_TRIALS",
            "EXPERIMENT_WORKERS", "TIMING_DECIMALS"
        ],
        "Reports and Files": [
            "REPORT_COLUMNS", "REPORT_FORMATS", "ALGORITHM_LABELS", "KIND_LABELS",
            "LOG_DIR", "LOG_MAX_FILES"
        ],
    }

def _get_setting_explanation(key):
    """
    Get explanation text for specific settings.

    Args:
        key: Setting key name

    Returns:
        Explanation string or None
    """
    explanations = {
        "RANK_TOLERANCE": "Residuals below this (relative) are treated as inside the basis span",
        "FREEZE_TOLERANCE": "Distance to ±1 at which a walk coordinate is snapped and frozen",
        "EIGEN_RELATIVE_FLOOR": "Eigenvectors below this fraction of the top eigenvalue are skipped",
        "PARTIAL_COLORING_RETRY_LIMIT": "Failed partial colorings tolerated per round before aborting",
        "WALK_BATCH_SIZE": "Gaussian steps sampled and projected together in one block",
        "ORTHONORMALITY_TOLERANCE": "Certificate bases drifting further from orthonormal are logged as warnings",
        "ORACLE_MAX_N_DISC": "Widest matrix the brute-force discrepancy oracle enumerates",
        "ORACLE_MAX_N_HERDISC": "Widest matrix the brute-force hereditary oracle enumerates",
        "SAMPLE_MANY_DEFAULT_TRIALS": "SampleMany trial budget when no matched time is available",
    }
    return explanations.get(key)

def _format_setting_value(value):
    """
    Format a setting value for display.

    Args:
        value: The setting value to format

    Returns:
        Formatted string representation of the value
    """
    if isinstance(value, float) and 0 < abs(value) < 0.001:
        return f"{value:.0e}"
    if isinstance(value, (dict, list)) and len(str(value)) > 60:
        return "\n" + textwrap.indent(str(value), " " * 4)
    if value is None:
        return "None"
    return str(value)
