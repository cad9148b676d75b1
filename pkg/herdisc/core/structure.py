#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Structural decomposition of matrices with low hereditary discrepancy.

Contains functionality for:
1. ProjectToSmallRows: an orthonormal basis V with at most n/4 rows such
   that every row of A(I - V^T V) is short relative to herdisc(A)
2. The spectral lower bound on hereditary discrepancy from the eigenvalues
   of A^T A

Both routines are deterministic functions of their input.
"""

import math
import logging
from dataclasses import dataclass, field

import numpy as np

from ..config import Config, ContractViolationError
from .linalg import OrthonormalBasis, as_dense_matrix, gram, row_norms, sym_eig_desc

logger = logging.getLogger(__name__)


@dataclass
class SpectralCertificate:
    """
    Output of ProjectToSmallRows.

    Attributes:
        basis: Orthonormal rows V (at most floor(n/4))
        eta: Largest residual row norm max_i ||a_i(I - V^T V)||
        residual_row_norms: ||a_i(I - V^T V)|| for every row i
        eigen_insertions: Eigenvector rows added in the first loop
        row_insertions: Residual rows added in the final loop
        iterations: Iterations of the first loop that were executed
    """
    basis: OrthonormalBasis
    eta: float
    residual_row_norms: np.ndarray
    eigen_insertions: int = 0
    row_insertions: int = 0
    iterations: int = 0


@dataclass
class LowerBoundReport:
    """
    Spectral lower bound on herdisc(A).

    Attributes:
        value: max_k (k / 2e) * sqrt(lambda_k / (m n))
        argmax_k: 1-based k attaining the maximum
        eigenvalues: Eigenvalues of A^T A, non-increasing, clamped at 0
    """
    value: float
    argmax_k: int
    eigenvalues: np.ndarray = field(repr=False)


def small_rows_schedule(m: int, n: int) -> dict:
    """
    Integer counts used by ProjectToSmallRows for an m x n input.

    Args:
        m: Number of rows (m >= n)
        n: Number of columns

    Returns:
        Dictionary with log_ratio, iterations, per_iteration, eigen_budget,
        final_rows and basis_cap
    """
    log_ratio = math.log2(8.0 * m / n)
    basis_cap = n // 4
    return {
        'log_ratio': log_ratio,
        'iterations': math.ceil(log_ratio),
        'per_iteration': max(1, math.floor(n / (8.0 * log_ratio))),
        'eigen_budget': min(basis_cap, max(1, n // 8)),
        'final_rows': n // 8,
        'basis_cap': basis_cap,
    }


def _largest_rows(norms: np.ndarray, count: int) -> np.ndarray:
    """Indices of the `count` largest norms, ties broken by ascending index."""
    order = np.argsort(-norms, kind='stable')
    return order[:count]


def residual_norms(A: np.ndarray, basis: OrthonormalBasis) -> np.ndarray:
    """
    Norms of the rows of A(I - V^T V), rank-tolerance noise recorded as 0.

    Args:
        A: Input matrix
        basis: Orthonormal basis V

    Returns:
        Vector of m residual norms
    """
    norms = row_norms(basis.project_rows(A))
    floor = Config.RANK_TOLERANCE * np.maximum(1.0, row_norms(A))
    norms[norms <= floor] = 0.0
    return norms


def project_to_small_rows(A) -> SpectralCertificate:
    """
    Compute an orthonormal basis V that leaves only short rows in A(I - V^T V).

    Runs ceil(lg(8m/n)) iterations of: project the rows, keep the
    max(1, floor(m / 2^(i-1))) largest, eigendecompose the Gram matrix of the
    kept rows and append its top eigenvectors. Then the floor(n/8) largest
    residual rows are orthogonalized into V. Eigenvector insertions stop at
    min(floor(n/4), max(1, floor(n/8))) and the basis never exceeds
    floor(n/4) rows.

    Args:
        A: m x n matrix with m >= n

    Returns:
        SpectralCertificate with the basis, eta and residual row norms

    Raises:
        ContractViolationError: If m < n (apply reduce_wide first)

    Example:
        >>> cert = project_to_small_rows(np.ones((8, 4)))
        >>> cert.basis.size, cert.eta
        (1, 0.0)
    """
    A = as_dense_matrix(A)
    m, n = A.shape
    if m < n:
        error_msg = f"ProjectToSmallRows needs m >= n, got {m} x {n}"
        logger.error(error_msg)
        raise ContractViolationError(error_msg, operation="project_to_small_rows")

    schedule = small_rows_schedule(m, n)
    logger.debug(f"ProjectToSmallRows {m}x{n}: schedule {schedule}")

    basis = OrthonormalBasis(n)
    eigen_insertions = 0
    iterations = 0

    for i in range(1, schedule['iterations'] + 1):
        if eigen_insertions >= schedule['eigen_budget']:
            break
        iterations = i

        B = basis.project_rows(A)
        keep = max(1, m // (2 ** (i - 1)))
        B_bar = B[_largest_rows(row_norms(B), keep)]

        values, vectors = sym_eig_desc(gram(B_bar))
        if values[0] <= 0.0:
            logger.debug(f"Iteration {i}: kept rows are zero, nothing to insert")
            continue

        wanted = min(schedule['per_iteration'], schedule['eigen_budget'] - eigen_insertions)
        for k in range(wanted):
            if values[k] < Config.EIGEN_RELATIVE_FLOOR * values[0]:
                break
            if basis.orthogonalize(vectors[k]):
                eigen_insertions += 1

        logger.debug(f"Iteration {i}: kept {keep} rows, mu_1={values[0]:.4g}, "
                     f"basis rows={basis.size}")

    B = basis.project_rows(A)
    row_insertions = 0
    for j in _largest_rows(row_norms(B), schedule['final_rows']):
        if basis.size >= schedule['basis_cap']:
            break
        if basis.orthogonalize(B[j]):
            row_insertions += 1

    off_diagonal, norm_error = basis.orthonormality_residual()
    if max(off_diagonal, norm_error) > Config.ORTHONORMALITY_TOLERANCE:
        logger.warning(f"Certificate basis drifted from orthonormal: max |<v_i, v_j>| = "
                       f"{off_diagonal:.3e}, max | ||v_i|| - 1 | = {norm_error:.3e}")

    norms = residual_norms(A, basis)
    eta = float(np.max(norms))

    logger.debug(f"ProjectToSmallRows done: {basis.size} rows "
                 f"({eigen_insertions} eigen, {row_insertions} large rows), eta={eta:.6g}")

    return SpectralCertificate(
        basis=basis,
        eta=eta,
        residual_row_norms=norms,
        eigen_insertions=eigen_insertions,
        row_insertions=row_insertions,
        iterations=iterations,
    )


def certified_row_bound(m: int, n: int, herdisc: float) -> float:
    """Residual row norm bound 48e * lg(8m/n) * herdisc(A) for an m x n matrix."""
    return 48.0 * math.e * math.log2(8.0 * m / n) * herdisc


def herdisc_lower_bound(A) -> LowerBoundReport:
    """
    Spectral lower bound on the hereditary discrepancy of A.

    With lambda_1 >= ... >= lambda_n the eigenvalues of A^T A, every
    k <= min(m, n) gives herdisc(A) >= (k / 2e) * sqrt(lambda_k / (m n)).

    Args:
        A: m x n matrix

    Returns:
        LowerBoundReport with the best bound and the k attaining it

    Example:
        >>> round(herdisc_lower_bound(np.eye(3)).value, 4)
        0.1839
    """
    A = as_dense_matrix(A)
    m, n = A.shape

    eigenvalues, _ = sym_eig_desc(gram(A))
    limit = min(m, n)
    k = np.arange(1, limit + 1, dtype=np.float64)
    bounds = k / (2.0 * math.e) * np.sqrt(eigenvalues[:limit] / (m * n))

    best = int(np.argmax(bounds))
    report = LowerBoundReport(value=float(bounds[best]), argmax_k=best + 1, eigenvalues=eigenvalues)
    logger.debug(f"Spectral lower bound {report.value:.6g} at k={report.argmax_k}")
    return report
