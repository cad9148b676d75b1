#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Configuration modules for herdisc.

This package provides:
- Core configuration settings and singleton pattern
- Configuration display utilities
- Logging setup
- Custom exception classes for error handling
"""

from .config import Config
from .config_display import display_config
from .logging_config import setup_logging, cleanup_old_log_files
from .exceptions import (
    HerdiscError,
    ConfigError,
    ContractViolationError,
    FileProcessingError,
    OracleBudgetError,
    RetryLimitError,
    NumericalStallError,
    ReportGenerationError,
)

__all__ = [
    # Core configuration
    "Config",
    "display_config",
    "setup_logging",
    "cleanup_old_log_files",

    # Exception classes
    "HerdiscError",
    "ConfigError",
    "ContractViolationError",
    "FileProcessingError",
    "OracleBudgetError",
    "RetryLimitError",
    "NumericalStallError",
    "ReportGenerationError",
]
