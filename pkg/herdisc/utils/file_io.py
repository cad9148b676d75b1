#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
File I/O utilities for herdisc with error handling and debug logging.

Provides directory management plus the plain-text matrix and coloring
formats. Matrix files start with a header line "m n" followed by m lines of
n space-separated reals; coloring files hold one line of -1/1 integers.
Every parse error reports the offending line number.
"""

import os
import math
import logging

import numpy as np
import pandas as pd

from ..config.exceptions import FileProcessingError

logger = logging.getLogger(__name__)


def ensure_directory(directory):
    """
    Ensure a directory exists, creating it if necessary.

    Args:
        directory (str): Directory path to create

    Returns:
        str: Path to the directory

    Raises:
        FileProcessingError: If directory creation fails
    """
    if not directory:
        return directory

    logger.debug(f"Ensuring directory exists: {directory}")

    if not os.path.exists(directory):
        try:
            os.makedirs(directory, exist_ok=True)
            logger.debug(f"Created directory: {directory}")
        except Exception as e:
            error_msg = f"Error creating directory {directory}: {str(e)}"
            logger.error(error_msg)
            logger.debug(f"Error details: {str(e)}", exc_info=True)
            raise FileProcessingError(error_msg, filename=directory) from e

    return directory


def _read_lines(path):
    if not os.path.exists(path):
        error_msg = f"File does not exist: {path}"
        logger.error(error_msg)
        raise FileProcessingError(error_msg, filename=path)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return f.read().splitlines()
    except (OSError, UnicodeDecodeError) as e:
        error_msg = f"Error reading file {os.path.basename(path)}: {str(e)}"
        logger.error(error_msg)
        logger.debug(f"Error details: {str(e)}", exc_info=True)
        raise FileProcessingError(error_msg, filename=path) from e


def _parse_error(path, line_number, message):
    error_msg = f"{os.path.basename(path)} line {line_number}: {message}"
    logger.error(error_msg)
    return FileProcessingError(error_msg, filename=path, line_number=line_number)


def write_matrix(A, path):
    """
    Write a matrix in the "m n" header format.

    Entries use 17 significant digits, so float64 values read back exactly.

    Args:
        A: m x n matrix
        path (str): Output file path

    Raises:
        FileProcessingError: If the file cannot be written
    """
    A = np.asarray(A, dtype=np.float64)
    ensure_directory(os.path.dirname(os.path.abspath(path)))
    try:
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            f.write(f"{A.shape[0]} {A.shape[1]}\n")
            np.savetxt(f, A, fmt='%.17g', delimiter=' ')
    except OSError as e:
        error_msg = f"Error writing matrix to {path}: {str(e)}"
        logger.error(error_msg)
        logger.debug(f"Error details: {str(e)}", exc_info=True)
        raise FileProcessingError(error_msg, filename=path) from e
    logger.debug(f"Wrote {A.shape[0]}x{A.shape[1]} matrix to {path}")


def read_matrix(path):
    """
    Read a matrix written by write_matrix.

    Args:
        path (str): Matrix file path

    Returns:
        numpy.ndarray: m x n float64 matrix

    Raises:
        FileProcessingError: On a missing file or malformed content, with
            the line number of the first problem
    """
    lines = _read_lines(path)
    if not lines or not lines[0].strip():
        raise _parse_error(path, 1, "missing 'm n' header")

    header = lines[0].split()
    if len(header) != 2 or not all(token.isdigit() for token in header):
        raise _parse_error(path, 1, f"malformed header '{lines[0].strip()}', expected 'm n'")
    m, n = int(header[0]), int(header[1])
    if m < 1 or n < 1:
        raise _parse_error(path, 1, f"dimensions must be positive, got {m} x {n}")

    body = lines[1:]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != m:
        line_number = len(body) + 2 if len(body) < m else m + 2
        raise _parse_error(path, line_number, f"expected {m} rows, found {len(body)}")

    A = np.empty((m, n))
    for i, line in enumerate(body):
        line_number = i + 2
        tokens = line.split()
        if len(tokens) != n:
            raise _parse_error(path, line_number, f"expected {n} values, found {len(tokens)}")
        try:
            values = [float(token) for token in tokens]
        except ValueError as e:
            raise _parse_error(path, line_number, f"non-numeric value ({e})") from e
        if not all(math.isfinite(v) for v in values):
            raise _parse_error(path, line_number, "non-finite value")
        A[i] = values

    logger.debug(f"Read {m}x{n} matrix from {path}")
    return A


def write_coloring(x, path):
    """
    Write a coloring as one line of space-separated -1/1 integers.

    Args:
        x: Coloring or vector with entries in {-1, 1}
        path (str): Output file path

    Raises:
        FileProcessingError: If the file cannot be written
    """
    signs = np.asarray(getattr(x, 'signs', x), dtype=np.float64)
    ensure_directory(os.path.dirname(os.path.abspath(path)))
    try:
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            f.write(" ".join(str(int(v)) for v in signs) + "\n")
    except OSError as e:
        error_msg = f"Error writing coloring to {path}: {str(e)}"
        logger.error(error_msg)
        logger.debug(f"Error details: {str(e)}", exc_info=True)
        raise FileProcessingError(error_msg, filename=path) from e
    logger.debug(f"Wrote coloring of length {signs.shape[0]} to {path}")


def read_coloring(path):
    """
    Read a coloring written by write_coloring.

    Args:
        path (str): Coloring file path

    Returns:
        Coloring

    Raises:
        FileProcessingError: If the file is empty or holds an entry outside {-1, 1}
    """
    from ..core.coloring import Coloring

    lines = [line for line in _read_lines(path) if line.strip()]
    if not lines:
        raise _parse_error(path, 1, "empty coloring file")
    if len(lines) > 1:
        raise _parse_error(path, 2, "coloring must be a single line")

    signs = []
    for token in lines[0].split():
        if token not in ('1', '-1', '+1'):
            raise _parse_error(path, 1, f"entry '{token}' is not -1 or 1")
        signs.append(float(token))

    logger.debug(f"Read coloring of length {len(signs)} from {path}")
    return Coloring(np.array(signs))


def read_results_csv(path):
    """
    Read an experiment results table written by the csv report format.

    Args:
        path (str): CSV file path

    Returns:
        pandas.DataFrame: One row per result

    Raises:
        FileProcessingError: If the CSV cannot be read
    """
    if not os.path.exists(path):
        error_msg = f"CSV file does not exist: {path}"
        logger.error(error_msg)
        raise FileProcessingError(error_msg, filename=path)

    try:
        df = pd.read_csv(path)
        logger.debug(f"Read results CSV {os.path.basename(path)}, shape: {df.shape}")
        return df
    except pd.errors.EmptyDataError as e:
        error_msg = f"CSV file is empty: {os.path.basename(path)}"
        logger.error(error_msg)
        raise FileProcessingError(error_msg, filename=path) from e
    except pd.errors.ParserError as e:
        error_msg = f"CSV parsing failed for {os.path.basename(path)}: {str(e)}"
        logger.error(error_msg)
        logger.debug(f"Parser error details: {str(e)}", exc_info=True)
        raise FileProcessingError(error_msg, filename=path) from e
