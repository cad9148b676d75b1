#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Coloring engine for herdisc.

Contains functionality for:
1. The PartialColoring random walk with capped steps
2. HereditaryMinimize, which halves the fractional coordinates per round
3. Reduction of wide matrices (m < n) to at most m free coordinates
4. Discrepancy evaluation

A run is strictly sequential; distinct runs with distinct RandomSources
share no state and can execute in parallel.
"""

import math
import time
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ..config import (
    Config,
    ContractViolationError,
    NumericalStallError,
    RetryLimitError,
)
from .linalg import (
    OrthonormalBasis,
    RandomSource,
    as_dense_matrix,
    sample_gaussian,
    sample_gaussian_rows,
)
from .structure import SpectralCertificate, project_to_small_rows

logger = logging.getLogger(__name__)

FAILURE_REASONS = ('row_violation', 'steps_exhausted', 'degenerate')


@dataclass
class Coloring:
    """Full coloring x in {-1, +1}^n."""
    signs: np.ndarray

    def __post_init__(self):
        self.signs = np.asarray(self.signs, dtype=np.float64)
        if self.signs.ndim != 1 or not np.all(np.abs(self.signs) == 1.0):
            error_msg = "Coloring entries must be exactly -1 or +1"
            logger.error(error_msg)
            raise ContractViolationError(error_msg, operation="Coloring")

    def __len__(self):
        return self.signs.shape[0]

    def as_ints(self) -> np.ndarray:
        return self.signs.astype(np.int64)


@dataclass
class PartialColoringState:
    """
    State of one PartialColoring walk.

    The current point is x + v. Frozen coordinates sit exactly at +-1 and
    their unit vectors are rows of the basis, as are the saturated rows.
    `row_products` caches A v; the walk adds the A g of each accepted step.
    """
    x: np.ndarray
    v: np.ndarray
    basis: OrthonormalBasis
    eps: float
    steps: int
    tau: float
    eta: float
    row_products: np.ndarray
    frozen: np.ndarray
    saturated_rows: set = field(default_factory=set)
    t: int = 0

    @property
    def point(self) -> np.ndarray:
        return self.x + self.v

    @property
    def frozen_count(self) -> int:
        return int(np.count_nonzero(self.frozen))

    def freeze(self, i: int):
        unit = np.zeros(self.x.shape[0])
        unit[i] = 1.0
        self.frozen[i] = True
        self.basis.orthogonalize(unit)

    def saturate(self, row: np.ndarray, index: int):
        self.saturated_rows.add(int(index))
        self.basis.orthogonalize(row)


@dataclass
class PartialColoringOutcome:
    """
    Result of one PartialColoring attempt.

    On success `x` is the new partial coloring and `frozen` lists the
    coordinates at exactly +-1; on failure `x` is None and `reason` is one of
    row_violation, steps_exhausted or degenerate. `saturated_rows` lists the
    rows added to the basis during the attempt, whatever its result.
    """
    success: bool
    x: Optional[np.ndarray]
    frozen: np.ndarray
    reason: Optional[str]
    iterations: int
    eps: float
    steps: int
    tau: float
    eta: float
    saturated_rows: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))


@dataclass
class RoundRecord:
    round_number: int
    free_count: int
    tau: float
    eta: float
    eps: float
    steps: int
    retries: int
    failures_by_reason: Dict[str, int]
    iterations: int
    elapsed: float
    saturated_rows: int = 0

    def to_dict(self) -> dict:
        return {
            'round': self.round_number,
            'free_count': self.free_count,
            'tau': self.tau,
            'eta': self.eta,
            'eps': self.eps,
            'steps': self.steps,
            'retries': self.retries,
            'failures_by_reason': dict(self.failures_by_reason),
            'iterations': self.iterations,
            'elapsed': self.elapsed,
            'saturated_rows': self.saturated_rows,
        }


@dataclass
class RunReport:
    """
    Accounting of one HereditaryMinimize run.

    Attributes:
        seed: Seed of the RandomSource the run consumed
        rounds: One RoundRecord per accepted partial coloring
        total_bound: Sum over rounds of tau + eta
        final_disc: disc(A, x) of the returned coloring
        total_elapsed: Wall time in seconds
        reduction_residual: ||Ax||_inf after reduce_wide (0 when m >= n)
    """
    seed: int
    rounds: List[RoundRecord] = field(default_factory=list)
    total_bound: float = 0.0
    final_disc: float = 0.0
    total_elapsed: float = 0.0
    reduction_residual: float = 0.0

    @property
    def total_retries(self) -> int:
        return sum(r.retries for r in self.rounds)

    def within_bound(self) -> bool:
        return self.final_disc <= self.total_bound + 1e-6 * (1.0 + self.total_bound)

    def to_dict(self) -> dict:
        return {
            'seed': self.seed,
            'rounds': [r.to_dict() for r in self.rounds],
            'total_bound': self.total_bound,
            'final_disc': self.final_disc,
            'total_elapsed': self.total_elapsed,
            'total_retries': self.total_retries,
            'reduction_residual': self.reduction_residual,
        }


def disc_inf(A, x) -> float:
    """
    Discrepancy ||Ax||_inf of x on A.

    Args:
        A: m x n matrix
        x: Vector of dimension n

    Returns:
        max_i |(Ax)_i|

    Raises:
        ContractViolationError: If x does not have n entries

    Example:
        >>> disc_inf([[1, 1], [1, -1]], [1, -1])
        2.0
    """
    A = as_dense_matrix(A)
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != A.shape[1]:
        error_msg = f"Coloring has shape {x.shape}, matrix has {A.shape[1]} columns"
        logger.error(error_msg)
        raise ContractViolationError(error_msg, operation="disc_inf")
    return float(np.max(np.abs(A @ x)))


def partial_coloring_params(A, eta: float) -> Tuple[float, int, float]:
    """
    Step scale, iteration budget and row threshold of the walk.

    eps = max(4 ln(mn) + 20, 256n)^(-1/2), Q = ceil(16/eps^2 + 256n) and
    tau = 22 eps eta sqrt(Q lg(256m/n)).

    Args:
        A: m x n matrix (or its shape)
        eta: Residual row norm from ProjectToSmallRows

    Returns:
        (eps, Q, tau)

    Example:
        >>> partial_coloring_params(np.ones((1, 1)), 0.0)
        (0.0625, 4352, 0.0)
    """
    m, n = A if isinstance(A, tuple) else np.shape(A)
    eps = max(4.0 * math.log(m * n) + 20.0, 256.0 * n) ** -0.5
    steps = math.ceil(16.0 / eps ** 2 + 256.0 * n)
    tau = 22.0 * eps * eta * math.sqrt(steps * math.log2(256.0 * m / n))
    return eps, steps, tau


def _frozen_mask(frozen, n: int) -> np.ndarray:
    if isinstance(frozen, np.ndarray) and frozen.dtype == bool:
        return frozen
    mask = np.zeros(n, dtype=bool)
    indices = list(frozen)
    if indices:
        mask[indices] = True
    return mask


def step_cap(c, g, frozen=()) -> float:
    """
    Largest mu with max(||c + mu g||_inf, ||c - mu g||_inf) = 1.

    Args:
        c: Current point in [-1, 1]^n
        g: Step direction
        frozen: Frozen coordinates (index set or boolean mask), ignored

    Returns:
        min over free i with |g_i| > 1e-12 of (1 - |c_i|) / |g_i|, or
        math.inf when no coordinate qualifies

    Raises:
        ContractViolationError: If c leaves [-1, 1] by more than 1e-9

    Example:
        >>> step_cap(np.array([0.2, -0.4]), np.array([2.0, 1.0]))
        0.4
    """
    c = np.asarray(c, dtype=np.float64)
    g = np.asarray(g, dtype=np.float64)
    if np.any(np.abs(c) > 1.0 + Config.BOX_TOLERANCE):
        error_msg = f"Point leaves the unit box (max |c_i| = {np.max(np.abs(c)):.12g})"
        logger.error(error_msg)
        raise ContractViolationError(error_msg, operation="step_cap")
    active = ~_frozen_mask(frozen, c.shape[0]) & (np.abs(g) > Config.STEP_CAP_FLOOR)
    if not np.any(active):
        return math.inf
    slack = np.maximum(0.0, 1.0 - np.abs(c[active]))
    return float(np.min(slack / np.abs(g[active])))


def _outcome(state: PartialColoringState, success: bool, reason: Optional[str] = None):
    point = state.point
    if success:
        point[state.frozen] = np.sign(point[state.frozen])
    return PartialColoringOutcome(
        success=success,
        x=point if success else None,
        frozen=np.flatnonzero(state.frozen),
        reason=reason,
        iterations=state.t,
        eps=state.eps,
        steps=state.steps,
        tau=state.tau,
        eta=state.eta,
        saturated_rows=np.array(sorted(state.saturated_rows), dtype=np.int64),
    )


class _StepBlock:
    """
    Projected Gaussian steps drawn ahead of the walk, together with A g.

    Pending rows are re-projected against basis rows inserted after the
    block was drawn, so every served step lies in the current complement.
    Served rows are views that the walk scales and snaps in place.
    """

    def __init__(self, A: np.ndarray, basis: OrthonormalBasis, rng: RandomSource, count: int):
        self.A = A
        self.basis = basis
        self.steps = basis.project_rows(sample_gaussian_rows(count, A.shape[1], rng))
        self.images = self.steps @ A.T
        self.projected = basis.size
        self.cursor = 0

    @property
    def remaining(self) -> int:
        return self.steps.shape[0] - self.cursor

    @property
    def exhausted(self) -> bool:
        return self.remaining <= 0

    def refresh(self):
        if self.basis.size > self.projected:
            new_rows = self.basis.rows_since(self.projected)
            pending = self.steps[self.cursor:]
            coefficients = pending @ new_rows.T
            pending -= coefficients @ new_rows
            self.images[self.cursor:] -= coefficients @ (new_rows @ self.A.T)
            self.projected = self.basis.size

    def pending(self, count: int) -> Tuple[np.ndarray, np.ndarray]:
        self.refresh()
        end = self.cursor + count
        return self.steps[self.cursor:end], self.images[self.cursor:end]

    def next(self) -> Tuple[np.ndarray, np.ndarray]:
        self.refresh()
        g = self.steps[self.cursor]
        image = self.images[self.cursor]
        self.cursor += 1
        return g, image


def _sync_point(state: PartialColoringState, point: np.ndarray, room: np.ndarray):
    """Write x + v into point and 1 - |x_i + v_i| (inf when frozen) into room."""
    np.add(state.x, state.v, out=point)
    np.subtract(1.0, np.abs(point), out=room)
    np.copyto(room, np.inf, where=state.frozen)


def _free_run(state: PartialColoringState, block: _StepBlock, free: np.ndarray,
              saturated: np.ndarray, snap_at: float) -> int:
    """
    Apply the longest prefix of pending steps on which the walk is unconstrained.

    A step qualifies when |c_i| + eps |g_i| < 1 - FREEZE_TOLERANCE for every
    free i and every unsaturated row stays below tau after it. Such a step
    moves by exactly eps g and freezes or saturates nothing, so the prefix is
    applied at once. Returns the number of steps taken.
    """
    count = min(block.remaining, state.steps - state.t)
    if count < 1:
        return 0
    pending, images = block.pending(count)

    moves = pending * (free * state.eps)
    travelled = np.cumsum(moves, axis=0)
    positions = state.point + travelled
    reach = np.abs(positions - moves) + np.abs(moves)
    ok = np.max(reach, axis=1, initial=0.0, where=free) < snap_at
    ok &= np.max(np.abs(moves), axis=1, initial=0.0, where=free) > Config.STEP_CAP_FLOOR

    products = state.row_products + state.eps * np.cumsum(images, axis=0)
    ok &= np.max(np.abs(products), axis=1, initial=-np.inf, where=~saturated) < state.tau

    run = count if ok.all() else int(np.argmin(ok))
    if run:
        state.v += travelled[run - 1]
        state.row_products = products[run - 1].copy()
        state.t += run
        block.cursor += run
    return run


def partial_coloring(A, x, rng: RandomSource,
                     certificate: Optional[SpectralCertificate] = None,
                     on_step: Optional[Callable[[PartialColoringState], None]] = None
                     ) -> PartialColoringOutcome:
    """
    Run the capped-step random walk from the fractional coloring x.

    Each iteration takes a Gaussian projected onto the complement of the
    basis, caps the step at min(eps, mu) and moves. Coordinates reaching
    +-1 are snapped and frozen; rows whose drift crosses tau are added to the
    basis, or end the walk when they already exceed tau + eta. The walk
    succeeds once ceil(n/2) coordinates are frozen.

    Gaussians are drawn WALK_BATCH_SIZE at a time and projected as a block.
    Runs of steps that stay clear of the box boundary and of tau are applied
    together; the other steps are taken one at a time.

    Args:
        A: m x n matrix with m >= n
        x: Starting point with every |x_i| < 1
        rng: Random source for the Gaussian steps
        certificate: Precomputed ProjectToSmallRows result for A
        on_step: Called with the walk state after every step that moved
            (once per run of unconstrained steps)

    Returns:
        PartialColoringOutcome (a Failure is a normal, retryable result)

    Raises:
        ContractViolationError: If m < n, x has the wrong shape or |x_i| >= 1
    """
    A = as_dense_matrix(A)
    m, n = A.shape
    if m < n:
        error_msg = f"PartialColoring needs m >= n, got {m} x {n}"
        logger.error(error_msg)
        raise ContractViolationError(error_msg, operation="partial_coloring")

    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != n:
        error_msg = f"Starting point has shape {x.shape}, expected ({n},)"
        logger.error(error_msg)
        raise ContractViolationError(error_msg, operation="partial_coloring")
    if np.any(np.abs(x) >= 1.0):
        error_msg = "Starting point must lie strictly inside the unit box"
        logger.error(error_msg)
        raise ContractViolationError(error_msg, operation="partial_coloring")

    if certificate is None:
        certificate = project_to_small_rows(A)
    eps, steps, tau = partial_coloring_params((m, n), certificate.eta)

    state = PartialColoringState(
        x=x.copy(),
        v=np.zeros(n),
        basis=certificate.basis.copy(),
        eps=eps,
        steps=steps,
        tau=tau,
        eta=certificate.eta,
        row_products=np.zeros(m),
        frozen=np.zeros(n, dtype=bool),
    )
    target = math.ceil(n / 2)
    threshold = tau + state.eta
    snap_at = 1.0 - Config.FREEZE_TOLERANCE

    point = state.point
    free = ~state.frozen
    # 1 - |c_i| for free coordinates, inf for frozen ones
    room = 1.0 - np.abs(point)
    saturated = np.abs(state.row_products) >= tau
    block = None

    while state.t < steps:
        if state.basis.is_full:
            logger.debug(f"Walk degenerate after {state.t} iterations: basis spans R^{n}")
            return _outcome(state, False, 'degenerate')
        if block is None or block.exhausted:
            block = _StepBlock(A, state.basis, rng, min(Config.WALK_BATCH_SIZE, steps - state.t))

        if _free_run(state, block, free, saturated, snap_at):
            _sync_point(state, point, room)
            if on_step is not None:
                on_step(state)
            if block.exhausted or state.t >= steps:
                continue

        # Close to the box boundary or to tau: one capped step
        state.t += 1

        g, image = block.next()
        magnitude = np.abs(g)
        mu = float(np.min(room / np.maximum(magnitude, Config.STEP_CAP_FLOOR)))
        scale = min(eps, mu)
        if scale * float(np.max(magnitude, initial=0.0, where=free)) <= Config.STEP_CAP_FLOOR:
            continue
        g[state.frozen] = 0.0
        g *= scale
        image *= scale

        moved = point + g
        hits = np.flatnonzero(free & (np.abs(moved) >= snap_at))
        if hits.size:
            correction = np.sign(moved[hits]) - moved[hits]
            g[hits] += correction
            image += A[:, hits] @ correction
            for i in hits:
                state.freeze(i)
            free[hits] = False

        new_products = state.row_products + image
        magnitude = np.abs(new_products)
        if np.max(magnitude) >= tau:
            crossing = np.flatnonzero((magnitude >= tau) & ~saturated)
            if crossing.size:
                if np.any(magnitude[crossing] > threshold):
                    logger.debug(f"Row drift exceeded tau + eta = {threshold:.6g} "
                                 f"at iteration {state.t}")
                    return _outcome(state, False, 'row_violation')
                for i in crossing:
                    state.saturate(A[i], i)
                saturated[crossing] = True

        state.v += g
        state.row_products = new_products
        _sync_point(state, point, room)
        if on_step is not None:
            on_step(state)

        if hits.size and state.frozen_count >= target:
            logger.debug(f"Walk succeeded after {state.t} iterations, "
                         f"{state.frozen_count}/{n} frozen, {len(state.saturated_rows)} rows saturated")
            return _outcome(state, True)

    logger.debug(f"Walk exhausted {steps} iterations with {state.frozen_count}/{n} frozen")
    return _outcome(state, False, 'steps_exhausted')


def reduce_wide(A, rng: RandomSource) -> Tuple[np.ndarray, np.ndarray]:
    """
    Reduce an m x n matrix with m < n to at most m free coordinates.

    Walks inside the null space of A: every step moves as far as the unit
    box allows, so at least one coordinate reaches +-1 and is frozen. The
    walk ends once the rows of A and the frozen unit vectors span R^n.

    Args:
        A: m x n matrix with m < n
        rng: Random source

    Returns:
        (x with Ax = 0 up to rounding, sorted indices of free coordinates)

    Raises:
        ContractViolationError: If m >= n
        NumericalStallError: If the projected step vanishes before V is full
    """
    A = as_dense_matrix(A)
    m, n = A.shape
    if m >= n:
        error_msg = f"reduce_wide needs m < n, got {m} x {n}"
        logger.error(error_msg)
        raise ContractViolationError(error_msg, operation="reduce_wide")

    basis = OrthonormalBasis.from_rows(A, ambient_dim=n)
    x = np.zeros(n)
    frozen = np.zeros(n, dtype=bool)
    snap_at = 1.0 - Config.FREEZE_TOLERANCE

    while basis.size < n and not np.all(frozen):
        g = basis.project(sample_gaussian(n, rng))
        g[frozen] = 0.0
        active = np.abs(g) > Config.STEP_CAP_FLOOR
        if not np.any(active):
            error_msg = (f"Projected step vanished with {basis.size} of {n} basis rows")
            logger.error(error_msg)
            raise NumericalStallError(error_msg, rows=basis.size, ambient_dim=n)

        limits = np.full(n, np.inf)
        limits[active] = (np.sign(g[active]) - x[active]) / g[active]
        hit = int(np.argmin(limits))
        x += limits[hit] * g
        x[hit] = np.sign(g[hit])

        for i in np.flatnonzero(~frozen & (np.abs(x) >= snap_at)):
            x[i] = np.sign(x[i])
            frozen[i] = True
            unit = np.zeros(n)
            unit[i] = 1.0
            basis.orthogonalize(unit)

    free = np.flatnonzero(~frozen)
    logger.debug(f"reduce_wide {m}x{n}: {n - free.size} frozen, {free.size} free")
    return x, free


def hereditary_minimize(A, rng: RandomSource) -> Tuple[Coloring, RunReport]:
    """
    Compute a full coloring with discrepancy bounded by the hereditary bound.

    Each round restricts A to the free columns S, computes the spectral
    certificate of A_S once and retries PartialColoring until it succeeds.
    The accepted partial coloring is spliced back and its frozen coordinates
    leave S, so |S| at least halves per round.

    Args:
        A: m x n matrix (wide matrices are reduced first)
        rng: Random source

    Returns:
        (Coloring, RunReport)

    Raises:
        RetryLimitError: If a round fails PARTIAL_COLORING_RETRY_LIMIT times
        NumericalStallError: If the wide-matrix reduction stalls

    Example:
        >>> coloring, report = hereditary_minimize(np.zeros((3, 3)), RandomSource(1))
        >>> report.final_disc
        0.0
    """
    A = as_dense_matrix(A)
    m, n = A.shape
    started = time.perf_counter()
    report = RunReport(seed=rng.seed)

    if m < n:
        x, free = reduce_wide(A, rng)
        report.reduction_residual = float(np.max(np.abs(A @ x)))
    else:
        x = np.zeros(n)
        free = np.arange(n)

    round_number = 0
    while free.size:
        round_number += 1
        round_started = time.perf_counter()
        sub = A[:, free]
        certificate = project_to_small_rows(sub)
        failures = {reason: 0 for reason in FAILURE_REASONS}

        while True:
            outcome = partial_coloring(sub, x[free], rng, certificate=certificate)
            if outcome.success:
                break
            failures[outcome.reason] += 1
            retries = sum(failures.values())
            if retries >= Config.PARTIAL_COLORING_RETRY_LIMIT:
                error_msg = (f"PartialColoring failed {retries} times in round {round_number} "
                             f"({free.size} free coordinates): {failures}")
                logger.error(error_msg)
                raise RetryLimitError(error_msg, round_number=round_number, retries=retries)

        x[free] = outcome.x
        record = RoundRecord(
            round_number=round_number,
            free_count=int(free.size),
            tau=outcome.tau,
            eta=outcome.eta,
            eps=outcome.eps,
            steps=outcome.steps,
            retries=sum(failures.values()),
            failures_by_reason=failures,
            iterations=outcome.iterations,
            elapsed=time.perf_counter() - round_started,
            saturated_rows=int(outcome.saturated_rows.size),
        )
        report.rounds.append(record)
        logger.debug(f"Round {round_number}: |S|={record.free_count}, tau={record.tau:.6g}, "
                     f"eta={record.eta:.6g}, retries={record.retries}, "
                     f"iterations={record.iterations}")

        free = np.delete(free, outcome.frozen)

    coloring = Coloring(x)
    report.total_bound = float(sum(r.tau + r.eta for r in report.rounds))
    report.final_disc = float(np.max(np.abs(A @ coloring.signs)))
    report.total_elapsed = time.perf_counter() - started

    logger.debug(f"HereditaryMinimize {m}x{n}: disc={report.final_disc:.6g}, "
                 f"bound={report.total_bound:.6g}, rounds={len(report.rounds)}")
    return coloring, report
