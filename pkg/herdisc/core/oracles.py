#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Exhaustive discrepancy oracles for small matrices.

Contains functionality for:
1. Exact disc(A) by Gray-code enumeration of sign vectors
2. Exact herdisc(A) by enumeration of column subsets

Both are ground truth for tests and refuse inputs wider than their budget.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..config import Config, OracleBudgetError
from .coloring import Coloring
from .linalg import as_dense_matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleBudget:
    """Widest matrix (number of columns) an oracle will enumerate."""
    max_n: int

    @classmethod
    def for_disc(cls) -> 'OracleBudget':
        return cls(Config.get_oracle_budget('disc'))

    @classmethod
    def for_herdisc(cls) -> 'OracleBudget':
        return cls(Config.get_oracle_budget('herdisc'))


def _check_budget(n: int, budget: OracleBudget, oracle: str):
    if n > budget.max_n:
        error_msg = f"{oracle} refuses n={n}, budget allows at most {budget.max_n} columns"
        logger.error(error_msg)
        raise OracleBudgetError(error_msg, n=n, max_n=budget.max_n)


def _gray_signs(words: np.ndarray, n: int) -> np.ndarray:
    """Sign vectors for Gray words; bit j of a word flips coordinate j + 1."""
    bits = (words[:, None] >> np.arange(n - 1)) & 1
    signs = np.ones((words.shape[0], n))
    signs[:, 1:] = 1.0 - 2.0 * bits
    return signs


def _enumerate_disc(A: np.ndarray) -> Tuple[float, np.ndarray]:
    """
    Minimum of ||Ax||_inf over x in {-1, 1}^n with x_0 = +1.

    Colorings are visited in Gray-code order, so consecutive colorings
    differ in one coordinate and Ax changes by one column. Each chunk starts
    from an exact product to keep the accumulated sums from drifting.
    """
    m, n = A.shape
    total = 1 << (n - 1)
    chunk = Config.ORACLE_CHUNK_SIZE

    best_disc = np.inf
    best_word = 0
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        t = np.arange(start, stop, dtype=np.int64)
        words = t ^ (t >> 1)

        first = _gray_signs(words[:1], n)[0]
        products = np.empty((m, stop - start))
        products[:, 0] = A @ first
        if stop - start > 1:
            steps = t[1:]
            flipped = np.log2(steps & -steps).astype(np.int64)
            new_signs = 1.0 - 2.0 * ((words[1:] >> flipped) & 1)
            deltas = A[:, flipped + 1] * (2.0 * new_signs)
            products[:, 1:] = products[:, :1] + np.cumsum(deltas, axis=1)

        discs = np.max(np.abs(products), axis=0)
        k = int(np.argmin(discs))
        if discs[k] < best_disc:
            best_disc = float(discs[k])
            best_word = int(words[k])

    witness = _gray_signs(np.array([best_word], dtype=np.int64), n)[0]
    # Recompute exactly for the witness
    return float(np.max(np.abs(A @ witness))), witness


def brute_force_disc(A, budget: Optional[OracleBudget] = None) -> Tuple[float, Coloring]:
    """
    Exact discrepancy of A and a coloring attaining it.

    Only the 2^(n-1) colorings with x_0 = +1 are enumerated, since x and -x
    have the same discrepancy.

    Args:
        A: m x n matrix
        budget: Width cap, defaults to OracleBudget.for_disc()

    Returns:
        (disc(A), witness Coloring)

    Raises:
        OracleBudgetError: If n exceeds the budget

    Example:
        >>> brute_force_disc(np.eye(3))[0]
        1.0
    """
    A = as_dense_matrix(A)
    budget = budget or OracleBudget.for_disc()
    _check_budget(A.shape[1], budget, "brute_force_disc")

    disc, witness = _enumerate_disc(A)
    logger.debug(f"brute_force_disc {A.shape[0]}x{A.shape[1]}: {disc:.6g}")
    return disc, Coloring(witness)


def brute_force_herdisc(A, budget: Optional[OracleBudget] = None) -> float:
    """
    Exact hereditary discrepancy: max of disc(A_S) over nonempty column sets S.

    Args:
        A: m x n matrix
        budget: Width cap, defaults to OracleBudget.for_herdisc()

    Returns:
        herdisc(A)

    Raises:
        OracleBudgetError: If n exceeds the budget
    """
    A = as_dense_matrix(A)
    budget = budget or OracleBudget.for_herdisc()
    n = A.shape[1]
    _check_budget(n, budget, "brute_force_herdisc")

    best = 0.0
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(n), size):
            disc, _ = _enumerate_disc(A[:, list(subset)])
            best = max(best, disc)

    logger.debug(f"brute_force_herdisc {A.shape[0]}x{n}: {best:.6g}")
    return best
