#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Logging configuration module for herdisc.
"""

import os
import sys
import datetime
import logging
import glob

from .config import Config

def cleanup_old_log_files(log_dir, max_files=10):
    """
    Keep only the most recent log files, remove older ones.

    Args:
        log_dir: Directory containing log files
        max_files: Maximum number of log files to keep
    """
    logger = logging.getLogger(__name__)
    try:
        log_pattern = os.path.join(log_dir, "herdisc_*.log")
        log_files = glob.glob(log_pattern)

        if len(log_files) <= max_files:
            return

        # Newest first
        log_files.sort(key=lambda x: os.path.getmtime(x), reverse=True)

        for old_file in log_files[max_files:]:
            try:
                os.remove(old_file)
                logger.debug(f"Removed old log file: {os.path.basename(old_file)}")
            except Exception as e:
                logger.debug(f"Could not remove old log file {os.path.basename(old_file)}: {e}")

    except Exception as e:
        logger.debug(f"Error during log cleanup: {e}")

def setup_logging(debug=False, log_dir=None):
    """
    Configure logging for the application.

    Sets up both file and console logging. The file handler always records
    DEBUG detail; the console shows bare messages unless debug is enabled.
    When the log directory cannot be created, logging continues on the
    console only.

    Args:
        debug: Enable debug mode with detailed logging
        log_dir: Directory for log files (defaults to Config.get_log_dir())

    Returns:
        Path to the log file, or None when only console logging is active
    """
    console_log_level = logging.DEBUG if debug else logging.INFO

    file_log_format = '%(asctime)s - %(name)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s'

    if debug:
        console_log_format = file_log_format
    else:
        console_log_format = '%(message)s'

    root_logger = logging.getLogger()
    root_logger.setLevel(logging.DEBUG)

    # Clear existing handlers to avoid duplicates
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    console_handler = logging.StreamHandler()
    console_handler.setLevel(console_log_level)
    console_handler.setFormatter(logging.Formatter(console_log_format))
    root_logger.addHandler(console_handler)

    logger = logging.getLogger(__name__)

    if log_dir is None:
        log_dir = Config.get_log_dir()

    log_file = os.path.join(log_dir, f"herdisc_{datetime.datetime.now().strftime('%Y%m%d_%H%M%S')}.log")
    try:
        os.makedirs(log_dir, exist_ok=True)
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(file_log_format))
        root_logger.addHandler(file_handler)
    except OSError as e:
        logger.warning(f"File logging disabled, cannot write to {log_dir}: {e}")
        log_file = None

    if debug:
        logger.debug("Debug mode enabled")
        logger.debug(f"Log file: {log_file}")
        logger.debug(f"Python version: {sys.version}")
        logger.debug(f"Platform: {sys.platform}")

    if log_file is not None:
        cleanup_old_log_files(log_dir, max_files=Config.LOG_MAX_FILES)

    return log_file
