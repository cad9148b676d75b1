#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Dense linear algebra primitives for herdisc.

Contains functionality for:
1. Matrix validation (finite, two-dimensional, non-empty)
2. Incremental Gram-Schmidt orthonormal bases and complement projections
3. Symmetric eigendecomposition with descending eigenvalues
4. Seeded Gaussian and sign sampling with named sub-streams

Projections never materialize I - V^T V; they apply the basis rows as two
matrix-vector products, O(l*n) per vector.
"""

import logging
import zlib
from typing import Optional, Tuple

import numpy as np
import scipy.linalg

from ..config import Config, ContractViolationError

logger = logging.getLogger(__name__)

# Real m x n matrices are plain float64 ndarrays validated by as_dense_matrix
DenseMatrix = np.ndarray


def as_dense_matrix(data, name="A"):
    """
    Validate and convert input to a dense float64 matrix.

    Args:
        data: Array-like with two dimensions
        name: Name used in error messages

    Returns:
        numpy.ndarray of shape (m, n) with m, n >= 1 and finite entries

    Raises:
        ContractViolationError: If the input is not a finite non-empty matrix

    Example:
        >>> as_dense_matrix([[1, 2], [3, 4]]).shape
        (2, 2)
    """
    try:
        A = np.array(data, dtype=np.float64)
    except (TypeError, ValueError) as e:
        error_msg = f"Matrix {name} is not numeric: {e}"
        logger.error(error_msg)
        raise ContractViolationError(error_msg, operation="as_dense_matrix") from e

    if A.ndim != 2:
        error_msg = f"Matrix {name} must be two-dimensional, got shape {A.shape}"
        logger.error(error_msg)
        raise ContractViolationError(error_msg, operation="as_dense_matrix")

    if A.shape[0] < 1 or A.shape[1] < 1:
        error_msg = f"Matrix {name} must have m >= 1 and n >= 1, got shape {A.shape}"
        logger.error(error_msg)
        raise ContractViolationError(error_msg, operation="as_dense_matrix")

    if not np.all(np.isfinite(A)):
        error_msg = f"Matrix {name} contains NaN or infinite entries"
        logger.error(error_msg)
        raise ContractViolationError(error_msg, operation="as_dense_matrix")

    return A


def _as_vector(y, n, operation):
    """Convert y to a float64 vector of length n."""
    vec = np.asarray(y, dtype=np.float64)
    if vec.ndim != 1 or vec.shape[0] != n:
        error_msg = f"Expected a vector of dimension {n}, got shape {vec.shape}"
        logger.error(error_msg)
        raise ContractViolationError(error_msg, operation=operation)
    return vec


class OrthonormalBasis:
    """
    Growing set of pairwise orthogonal unit rows in R^n.

    Rows are stored in a preallocated n x n buffer; only the first `size`
    rows are live. The basis only grows through `orthogonalize`, so the
    rows after k insertions are always a prefix of the final rows.

    Example:
        >>> basis = OrthonormalBasis(3)
        >>> basis.orthogonalize([1.0, 1.0, 0.0])
        True
        >>> basis.project([1.0, 0.0, 0.0])
        array([ 0.5, -0.5,  0. ])
    """

    def __init__(self, ambient_dim: int):
        if ambient_dim < 1:
            error_msg = f"Ambient dimension must be positive, got {ambient_dim}"
            logger.error(error_msg)
            raise ContractViolationError(error_msg, operation="OrthonormalBasis")
        self._rows = np.zeros((ambient_dim, ambient_dim), dtype=np.float64)
        self._size = 0

    @classmethod
    def from_rows(cls, rows, ambient_dim: Optional[int] = None) -> 'OrthonormalBasis':
        """
        Build a basis by orthogonalizing the given rows in order.

        Args:
            rows: Sequence of vectors (or a 2-D array)
            ambient_dim: Dimension n, required when rows is empty

        Returns:
            New OrthonormalBasis spanning the rows
        """
        rows = np.asarray(rows, dtype=np.float64)
        if ambient_dim is None:
            if rows.ndim != 2:
                raise ContractViolationError("Cannot infer ambient dimension", operation="from_rows")
            ambient_dim = rows.shape[1]
        basis = cls(ambient_dim)
        for row in rows.reshape(-1, ambient_dim):
            basis.orthogonalize(row)
        return basis

    @property
    def ambient_dim(self) -> int:
        return self._rows.shape[1]

    @property
    def size(self) -> int:
        return self._size

    def __len__(self):
        return self._size

    @property
    def rows(self) -> np.ndarray:
        """Copy of the live rows as an (l, n) array."""
        return self._rows[:self._size].copy()

    @property
    def is_full(self) -> bool:
        return self._size >= self.ambient_dim

    def rows_since(self, k: int) -> np.ndarray:
        """View of the rows inserted after the first k (empty when none)."""
        return self._rows[max(0, k):self._size]

    def copy(self) -> 'OrthonormalBasis':
        clone = OrthonormalBasis(self.ambient_dim)
        clone._rows[:self._size] = self._rows[:self._size]
        clone._size = self._size
        return clone

    def truncated(self, k: int) -> 'OrthonormalBasis':
        """Basis made of the first k rows (the state after k insertions)."""
        clone = OrthonormalBasis(self.ambient_dim)
        k = max(0, min(k, self._size))
        clone._rows[:k] = self._rows[:k]
        clone._size = k
        return clone

    def project(self, y) -> np.ndarray:
        """
        Project a vector onto the orthogonal complement of the basis rows.

        Args:
            y: Vector of dimension n

        Returns:
            y - sum_i <y, v_i> v_i
        """
        vec = _as_vector(y, self.ambient_dim, "project_complement")
        if self._size == 0:
            return vec.copy()
        live = self._rows[:self._size]
        return vec - (live @ vec) @ live

    def project_rows(self, A) -> np.ndarray:
        """Project every row of A onto the orthogonal complement."""
        if A.shape[1] != self.ambient_dim:
            error_msg = f"Matrix has {A.shape[1]} columns, basis lives in R^{self.ambient_dim}"
            logger.error(error_msg)
            raise ContractViolationError(error_msg, operation="project_rows_complement")
        if self._size == 0:
            return np.array(A, dtype=np.float64, copy=True)
        live = self._rows[:self._size]
        return A - (A @ live.T) @ live

    def orthogonalize(self, s) -> bool:
        """
        Add the normalized residual of s as a new row when it is non-zero.

        The residual is re-orthogonalized once against the existing rows
        after normalizing.

        Args:
            s: Vector of dimension n

        Returns:
            True if a row was appended, False if s was already in the span
        """
        vec = _as_vector(s, self.ambient_dim, "orthogonalize")
        if self.is_full:
            return False

        residual = self.project(vec)
        residual_norm = np.linalg.norm(residual)
        if residual_norm <= Config.RANK_TOLERANCE * max(1.0, np.linalg.norm(vec)):
            return False

        residual /= residual_norm
        # Second Gram-Schmidt pass
        residual = self.project(residual)
        residual /= np.linalg.norm(residual)

        self._rows[self._size] = residual
        self._size += 1
        return True

    def orthonormality_residual(self) -> Tuple[float, float]:
        """
        Measure how far the live rows are from orthonormal.

        Returns:
            (max |<v_i, v_j>| over i != j, max | ||v_i|| - 1 |)
        """
        if self._size == 0:
            return 0.0, 0.0
        live = self._rows[:self._size]
        inner = live @ live.T
        norms = np.sqrt(np.diag(inner))
        off_diagonal = inner - np.diag(np.diag(inner))
        return float(np.max(np.abs(off_diagonal))), float(np.max(np.abs(norms - 1.0)))


class RandomSource:
    """
    Seeded random stream used by every randomized routine.

    Wraps a numpy Generator. Identical seeds give identical streams;
    `child(name)` derives an independent stream whose seed depends only on
    the parent seed and the name. A RandomSource is single-owner.

    Example:
        >>> RandomSource(7).gaussian(2).shape
        (2,)
    """

    def __init__(self, seed: int = 0):
        seed = int(seed)
        if seed < 0 or seed >= 2 ** 64:
            error_msg = f"Seed must be a 64-bit unsigned integer, got {seed}"
            logger.error(error_msg)
            raise ContractViolationError(error_msg, operation="RandomSource")
        self.seed = seed
        self.generator = np.random.default_rng(seed)

    def child(self, name: str) -> 'RandomSource':
        """Derive a named sub-stream, independent of this stream's position."""
        spawn_key = (zlib.crc32(name.encode("utf-8")),)
        sequence = np.random.SeedSequence(entropy=self.seed, spawn_key=spawn_key)
        child_seed = int(sequence.generate_state(1, dtype=np.uint64)[0])
        return RandomSource(child_seed)

    def gaussian(self, size) -> np.ndarray:
        return self.generator.standard_normal(size)

    def signs(self, size) -> np.ndarray:
        """Uniform {-1, +1} entries as float64."""
        return np.where(self.generator.random(size) < 0.5, -1.0, 1.0)

    def uniform(self, size) -> np.ndarray:
        return self.generator.random(size)

    def coin(self) -> bool:
        return bool(self.generator.random() < 0.5)


def orthogonalize(s, basis: OrthonormalBasis) -> OrthonormalBasis:
    """
    Append the normalized component of s orthogonal to the basis.

    Args:
        s: Vector of dimension n
        basis: Basis to extend in place

    Returns:
        The same basis object, with one more row if the residual was non-zero

    Raises:
        ContractViolationError: If s does not have dimension n
    """
    appended = basis.orthogonalize(s)
    logger.debug(f"orthogonalize: appended={appended}, rows={basis.size}")
    return basis


def project_complement(basis: OrthonormalBasis, y) -> np.ndarray:
    """
    Compute y(I - V^T V).

    Raises:
        ContractViolationError: On dimension mismatch
    """
    return basis.project(y)


def project_rows_complement(A, basis: OrthonormalBasis) -> np.ndarray:
    """
    Compute A(I - V^T V) row by row.

    Raises:
        ContractViolationError: On dimension mismatch
    """
    return basis.project_rows(np.asarray(A, dtype=np.float64))


def sym_eig_desc(M) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigendecomposition of a symmetric positive semidefinite matrix.

    Args:
        M: Symmetric n x n matrix

    Returns:
        (eigenvalues sorted non-increasing and clamped at 0,
         eigenvectors as rows, row k belonging to eigenvalue k)

    Raises:
        ContractViolationError: If M is not square or not symmetric to 1e-10 relative

    Example:
        >>> values, vectors = sym_eig_desc([[2.0, 1.0], [1.0, 2.0]])
        >>> values
        array([3., 1.])
    """
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        error_msg = f"Eigendecomposition needs a square matrix, got shape {M.shape}"
        logger.error(error_msg)
        raise ContractViolationError(error_msg, operation="sym_eig_desc")

    scale = max(1.0, float(np.max(np.abs(M)))) if M.size else 1.0
    asymmetry = float(np.max(np.abs(M - M.T))) if M.size else 0.0
    if asymmetry > Config.SYMMETRY_TOLERANCE * scale:
        error_msg = f"Matrix is not symmetric (max asymmetry {asymmetry:.3e})"
        logger.error(error_msg)
        raise ContractViolationError(error_msg, operation="sym_eig_desc")

    symmetric = 0.5 * (M + M.T)
    values, vectors = scipy.linalg.eigh(symmetric)

    order = np.argsort(values)[::-1]
    values = np.maximum(values[order], 0.0)
    vectors = vectors[:, order].T.copy()
    return values, vectors


def sample_gaussian(n: int, rng: RandomSource) -> np.ndarray:
    """Draw n i.i.d. standard normal entries from rng."""
    if n < 1:
        raise ContractViolationError(f"Sample size must be positive, got {n}", operation="sample_gaussian")
    return rng.gaussian(n)


def sample_gaussian_rows(count: int, n: int, rng: RandomSource) -> np.ndarray:
    """
    Draw a (count, n) block of i.i.d. standard normal entries from rng.

    Row k of the block equals the k-th of count consecutive sample_gaussian
    draws from the same stream position.
    """
    if count < 1 or n < 1:
        error_msg = f"Block shape must be positive, got ({count}, {n})"
        logger.error(error_msg)
        raise ContractViolationError(error_msg, operation="sample_gaussian_rows")
    return rng.gaussian((count, n))


def row_norms(A) -> np.ndarray:
    """Euclidean norm of every row of A."""
    return np.linalg.norm(np.asarray(A, dtype=np.float64), axis=1)


def gram(B) -> np.ndarray:
    """Return B^T B (symmetric positive semidefinite)."""
    B = np.asarray(B, dtype=np.float64)
    G = B.T @ B
    return 0.5 * (G + G.T)


def random_orthonormal_rows(count: int, n: int, rng: RandomSource) -> OrthonormalBasis:
    """
    Basis of `count` random orthonormal rows, drawn from Gaussian vectors.

    Args:
        count: Number of rows (at most n)
        n: Ambient dimension
        rng: Random source

    Returns:
        OrthonormalBasis with `count` rows
    """
    basis = OrthonormalBasis(n)
    while basis.size < min(count, n):
        basis.orthogonalize(rng.gaussian(n))
    return basis
