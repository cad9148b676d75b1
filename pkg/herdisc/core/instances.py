#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Benchmark matrix generators for herdisc.

Contains functionality for:
1. Uniform random +-1 matrices
2. 2D corner (dominance) incidence matrices
3. 2D halfspace incidence matrices
4. All-zero matrices for sanity runs

Every generator is a pure function of (kind, m, n, seed). Column points are
drawn from the "columns" sub-stream of the seed and row objects from the
"rows" sub-stream, so changing m leaves the columns untouched.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Sequence

import numpy as np

from ..config import Config, ContractViolationError
from .linalg import RandomSource

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InstanceSpec:
    """Kind, shape and seed of a benchmark matrix."""
    kind: str
    m: int
    n: int
    seed: int = 0

    def __post_init__(self):
        if self.kind not in Config.MATRIX_KINDS:
            error_msg = f"Unknown matrix kind '{self.kind}'. Valid kinds: {Config.MATRIX_KINDS}"
            logger.error(error_msg)
            raise ContractViolationError(error_msg, operation="InstanceSpec")
        if self.m < 1 or self.n < 1:
            error_msg = f"Matrix dimensions must be positive, got {self.m} x {self.n}"
            logger.error(error_msg)
            raise ContractViolationError(error_msg, operation="InstanceSpec")
        if self.seed < 0 or self.seed >= 2 ** 64:
            error_msg = f"Seed must be a 64-bit unsigned integer, got {self.seed}"
            logger.error(error_msg)
            raise ContractViolationError(error_msg, operation="InstanceSpec")

    @property
    def size_label(self) -> str:
        return f"{self.m}x{self.n}"


@dataclass(frozen=True)
class Halfspace:
    """
    Closed halfplane bounded by the line through a and b.

    `above` selects the side the line normal points to; the normal is
    oriented upward (rightward for vertical lines).
    """
    a: tuple
    b: tuple
    above: bool


def _require_kind(spec: InstanceSpec, kind: str):
    if spec.kind != kind:
        error_msg = f"Generator for '{kind}' called with a '{spec.kind}' spec"
        logger.error(error_msg)
        raise ContractViolationError(error_msg, operation=f"gen_{kind}")


def corner_matrix(points, queries) -> np.ndarray:
    """
    0/1 dominance matrix: entry (i, j) is 1 iff q_i.x > p_j.x and q_i.y > p_j.y.

    Args:
        points: n x 2 array of column points p_j
        queries: m x 2 array of row points q_i

    Returns:
        m x n float64 matrix

    Example:
        >>> corner_matrix([[0.5, 0.5]], [[0.6, 0.7], [0.4, 0.9]])
        array([[1.],
               [0.]])
    """
    P = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    Q = np.asarray(queries, dtype=np.float64).reshape(-1, 2)
    dominated = (Q[:, None, 0] > P[None, :, 0]) & (Q[:, None, 1] > P[None, :, 1])
    return dominated.astype(np.float64)


def halfspace_matrix(points, halfspaces: Sequence[Halfspace]) -> np.ndarray:
    """
    0/1 incidence of points in halfspaces; points on a boundary line count as inside.

    Args:
        points: n x 2 array of column points
        halfspaces: m Halfspace rows

    Returns:
        m x n float64 matrix
    """
    P = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    a = np.array([h.a for h in halfspaces], dtype=np.float64).reshape(-1, 2)
    b = np.array([h.b for h in halfspaces], dtype=np.float64).reshape(-1, 2)
    above = np.array([h.above for h in halfspaces], dtype=bool)

    d = b - a
    normal = np.stack([-d[:, 1], d[:, 0]], axis=1)
    flip = (normal[:, 1] < 0) | ((normal[:, 1] == 0) & (normal[:, 0] < 0))
    normal[flip] *= -1.0

    # side[i, j] = <normal_i, p_j - a_i>
    side = P @ normal.T - np.sum(normal * a, axis=1)
    side = side.T
    inside = np.where(above[:, None], side >= 0.0, side <= 0.0)
    return inside.astype(np.float64)


def _random_halfspace(rng: RandomSource) -> Halfspace:
    while True:
        u, w = rng.uniform(2)
        a = (0.0, u) if rng.coin() else (u, 1.0)
        b = (1.0, w) if rng.coin() else (w, 0.0)
        if a != b:
            return Halfspace(a=a, b=b, above=rng.coin())
        logger.debug(f"Degenerate halfspace a == b == {a}, resampling")


def gen_uniform(spec: InstanceSpec) -> np.ndarray:
    """Matrix with independent uniform +-1 entries."""
    _require_kind(spec, 'uniform')
    return RandomSource(spec.seed).signs((spec.m, spec.n))


def gen_corner(spec: InstanceSpec) -> np.ndarray:
    """
    2D corner incidence matrix.

    n column points and m query points are uniform in the unit square; a
    query's row marks the points it dominates in both coordinates.
    """
    _require_kind(spec, 'corner2d')
    root = RandomSource(spec.seed)
    points = root.child("columns").uniform((spec.n, 2))
    queries = root.child("rows").uniform((spec.m, 2))
    return corner_matrix(points, queries)


def gen_halfspace(spec: InstanceSpec) -> np.ndarray:
    """
    2D halfspace incidence matrix.

    Each halfspace is bounded by a line from a point on the left or top
    boundary of the unit square to a point on the right or bottom boundary,
    with a fair choice of side.
    """
    _require_kind(spec, 'halfspace2d')
    root = RandomSource(spec.seed)
    points = root.child("columns").uniform((spec.n, 2))
    rows = root.child("rows")
    halfspaces = [_random_halfspace(rows) for _ in range(spec.m)]
    return halfspace_matrix(points, halfspaces)


def gen_zero(spec: InstanceSpec) -> np.ndarray:
    _require_kind(spec, 'zero')
    return np.zeros((spec.m, spec.n))


GENERATORS: Dict[str, Callable[[InstanceSpec], np.ndarray]] = {
    'uniform': gen_uniform,
    'corner2d': gen_corner,
    'halfspace2d': gen_halfspace,
    'zero': gen_zero,
}


def generate(spec: InstanceSpec) -> np.ndarray:
    """
    Generate the matrix described by spec.

    Args:
        spec: InstanceSpec naming kind, shape and seed

    Returns:
        m x n float64 matrix
    """
    A = GENERATORS[spec.kind](spec)
    logger.debug(f"Generated {spec.kind} {spec.size_label} matrix (seed {spec.seed})")
    return A
