#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Baselines and experiment runner for herdisc.

Contains functionality for:
1. Sample: one uniform random coloring
2. SampleMany: the best of many random colorings within a time or trial budget
3. Timed experiments over (instance, seed) pairs with matched-time baselines
4. Dominance ratios of HereditaryMinimize over Sample per instance class

Each (instance, seed) pair runs on one worker: HereditaryMinimize first, then
SampleMany with the measured time as its budget. Sample is reported as the
median single-trial discrepancy inside that SampleMany run.
"""

import time
import logging
from dataclasses import dataclass, field, replace
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from ..config import Config, ConfigError
from .coloring import Coloring, hereditary_minimize
from .instances import InstanceSpec, generate
from .linalg import RandomSource, as_dense_matrix

logger = logging.getLogger(__name__)

BUDGET_MODES = ('matched-time', 'trial-count')


@dataclass
class ExperimentConfig:
    """
    Experiment definition.

    Each spec is run once per seed; the seed replaces the spec's own seed and
    is the master seed of every algorithm on that row.
    """
    specs: List[InstanceSpec]
    seeds: List[int]
    algorithms: List[str] = field(default_factory=lambda: list(Config.ALGORITHMS))
    budget_mode: str = 'matched-time'
    trial_budget: int = Config.SAMPLE_MANY_DEFAULT_TRIALS
    workers: int = Config.EXPERIMENT_WORKERS

    def __post_init__(self):
        if not self.specs or not self.seeds:
            error_msg = "Experiment needs at least one instance spec and one seed"
            logger.error(error_msg)
            raise ConfigError(error_msg, config_key="specs/seeds")
        unknown = [a for a in self.algorithms if a not in Config.ALGORITHMS]
        if unknown or not self.algorithms:
            error_msg = f"Unknown algorithms {unknown}. Valid algorithms: {Config.ALGORITHMS}"
            logger.error(error_msg)
            raise ConfigError(error_msg, config_key="algorithms", config_value=self.algorithms)
        if self.budget_mode not in BUDGET_MODES:
            error_msg = f"Unknown budget mode '{self.budget_mode}'. Valid modes: {list(BUDGET_MODES)}"
            logger.error(error_msg)
            raise ConfigError(error_msg, config_key="budget_mode", config_value=self.budget_mode)
        if self.trial_budget < 1 or self.workers < 1:
            error_msg = "Trial budget and worker count must be positive"
            logger.error(error_msg)
            raise ConfigError(error_msg, config_key="trial_budget/workers")

    def tasks(self) -> List[InstanceSpec]:
        return [replace(spec, seed=seed) for spec in self.specs for seed in self.seeds]


@dataclass
class ResultRow:
    """One (algorithm, instance, seed) result; disc is NaN when `error` is set."""
    algorithm: str
    kind: str
    m: int
    n: int
    seed: int
    disc: float
    elapsed: float
    trials: Optional[int] = None
    retries: Optional[int] = None
    error: Optional[str] = None

    @property
    def size_label(self) -> str:
        return f"{self.m}x{self.n}"

    def to_record(self) -> dict:
        return {
            'algorithm': self.algorithm,
            'kind': self.kind,
            'm': self.m,
            'n': self.n,
            'seed': self.seed,
            'disc': self.disc,
            'elapsed_s': round(self.elapsed, Config.TIMING_DECIMALS),
            'trials': self.trials,
            'retries': self.retries,
            'error': self.error,
        }


@dataclass
class SampleBudget:
    """Stop SampleMany after `seconds` of wall time or `trials` colorings, whichever comes first."""
    seconds: Optional[float] = None
    trials: Optional[int] = None

    def __post_init__(self):
        if self.seconds is None and self.trials is None:
            error_msg = "SampleMany needs a time or trial budget"
            logger.error(error_msg)
            raise ConfigError(error_msg, config_key="budget")
        if (self.seconds is not None and self.seconds <= 0) or \
                (self.trials is not None and self.trials < 1):
            error_msg = f"SampleMany budget must be positive, got {self}"
            logger.error(error_msg)
            raise ConfigError(error_msg, config_key="budget")


@dataclass
class SampleManyResult:
    """
    Best coloring of a SampleMany run plus every trial's discrepancy.

    Unpacks as (coloring, disc, trials).
    """
    coloring: Coloring
    disc: float
    trials: int
    trial_discs: np.ndarray
    elapsed: float

    def __iter__(self):
        return iter((self.coloring, self.disc, self.trials))

    def median_trial(self) -> float:
        """Lower median of the trial discrepancies, a value some trial attained."""
        ordered = np.sort(self.trial_discs)
        return float(ordered[(ordered.shape[0] - 1) // 2])


def baseline_sample(A, rng: RandomSource) -> Tuple[Coloring, float]:
    """
    Uniform random coloring.

    Args:
        A: m x n matrix
        rng: Random source

    Returns:
        (Coloring, disc(A, x))
    """
    A = as_dense_matrix(A)
    x = rng.signs(A.shape[1])
    return Coloring(x), float(np.max(np.abs(A @ x)))


def baseline_sample_many(A, budget: SampleBudget, rng: RandomSource) -> SampleManyResult:
    """
    Best of many uniform random colorings.

    The first trial draws exactly what baseline_sample would draw from the
    same stream; later trials are drawn in batches of SAMPLE_BATCH_SIZE. At
    least one trial always completes.

    Args:
        A: m x n matrix
        budget: Time and/or trial budget
        rng: Random source

    Returns:
        SampleManyResult with the minimum-discrepancy coloring

    Example:
        >>> coloring, disc, trials = baseline_sample_many(
        ...     np.eye(4), SampleBudget(trials=10), RandomSource(3))
        >>> trials
        10
    """
    A = as_dense_matrix(A)
    n = A.shape[1]
    started = time.perf_counter()

    first = rng.signs(n)
    best_x = first
    discs = [np.array([np.max(np.abs(A @ first))])]
    trials = 1

    def exhausted():
        if budget.trials is not None and trials >= budget.trials:
            return True
        return budget.seconds is not None and time.perf_counter() - started >= budget.seconds

    best_disc = float(discs[0][0])
    while not exhausted():
        batch = Config.SAMPLE_BATCH_SIZE
        if budget.trials is not None:
            batch = min(batch, budget.trials - trials)
        X = rng.signs((batch, n))
        batch_discs = np.max(np.abs(A @ X.T), axis=0)
        k = int(np.argmin(batch_discs))
        if batch_discs[k] < best_disc:
            best_disc = float(batch_discs[k])
            best_x = X[k]
        discs.append(batch_discs)
        trials += batch

    elapsed = time.perf_counter() - started
    logger.debug(f"SampleMany: {trials} trials in {elapsed:.3f}s, best disc {best_disc:.6g}")
    return SampleManyResult(
        coloring=Coloring(best_x),
        disc=best_disc,
        trials=trials,
        trial_discs=np.concatenate(discs),
        elapsed=elapsed,
    )


def _error_row(algorithm: str, spec: InstanceSpec, elapsed: float, error: Exception) -> ResultRow:
    return ResultRow(algorithm=algorithm, kind=spec.kind, m=spec.m, n=spec.n, seed=spec.seed,
                     disc=float('nan'), elapsed=elapsed, error=f"{type(error).__name__}: {error}")


def run_pair(spec: InstanceSpec, config: ExperimentConfig) -> List[ResultRow]:
    """
    Run every configured algorithm on one (instance, seed) pair.

    Args:
        spec: Instance spec carrying the master seed
        config: Experiment configuration

    Returns:
        Rows in the order hereditary, sample, sample_many (configured ones only)
    """
    A = generate(spec)
    root = RandomSource(spec.seed)
    rows = {}
    matched_seconds = None

    if 'hereditary' in config.algorithms:
        started = time.perf_counter()
        try:
            coloring, report = hereditary_minimize(A, root.child("hereditary"))
            matched_seconds = report.total_elapsed
            rows['hereditary'] = ResultRow(
                algorithm='hereditary', kind=spec.kind, m=spec.m, n=spec.n, seed=spec.seed,
                disc=report.final_disc, elapsed=report.total_elapsed,
                retries=report.total_retries,
            )
        except Exception as e:
            elapsed = time.perf_counter() - started
            logger.error(f"HereditaryMinimize failed on {spec.kind} {spec.size_label} "
                         f"seed {spec.seed}: {str(e)}")
            logger.debug(f"Error details: {str(e)}", exc_info=True)
            rows['hereditary'] = _error_row('hereditary', spec, elapsed, e)

    if 'sample' in config.algorithms or 'sample_many' in config.algorithms:
        if config.budget_mode == 'matched-time' and matched_seconds is not None:
            budget = SampleBudget(seconds=max(matched_seconds, 1e-6))
        else:
            budget = SampleBudget(trials=config.trial_budget)

        started = time.perf_counter()
        try:
            result = baseline_sample_many(A, budget, root.child("sample_many"))
            rows['sample_many'] = ResultRow(
                algorithm='sample_many', kind=spec.kind, m=spec.m, n=spec.n, seed=spec.seed,
                disc=result.disc, elapsed=result.elapsed, trials=result.trials,
            )
            rows['sample'] = ResultRow(
                algorithm='sample', kind=spec.kind, m=spec.m, n=spec.n, seed=spec.seed,
                disc=result.median_trial(), elapsed=result.elapsed / result.trials,
                trials=result.trials,
            )
        except Exception as e:
            elapsed = time.perf_counter() - started
            logger.error(f"SampleMany failed on {spec.kind} {spec.size_label} "
                         f"seed {spec.seed}: {str(e)}")
            logger.debug(f"Error details: {str(e)}", exc_info=True)
            rows['sample_many'] = _error_row('sample_many', spec, elapsed, e)
            rows['sample'] = _error_row('sample', spec, elapsed, e)

    return [rows[a] for a in Config.ALGORITHMS if a in config.algorithms]


def run_experiment(config: ExperimentConfig, progress: bool = True) -> List[ResultRow]:
    """
    Run the experiment and collect one row per (spec, seed, algorithm).

    A row whose run raised carries the error text and NaN disc; the other
    rows are unaffected.

    Args:
        config: Experiment configuration
        progress: Show a tqdm progress bar over (spec, seed) pairs

    Returns:
        Rows ordered by spec, then seed, then algorithm
    """
    tasks = config.tasks()
    logger.debug(f"Running {len(tasks)} (instance, seed) pairs on {config.workers} worker(s)")

    results: Dict[int, List[ResultRow]] = {}
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        futures = {pool.submit(run_pair, spec, config): i for i, spec in enumerate(tasks)}
        for future in tqdm(as_completed(futures), total=len(futures), desc="Running experiments",
                           unit="instance", disable=not progress):
            results[futures[future]] = future.result()

    rows = [row for i in range(len(tasks)) for row in results[i]]
    failed = sum(1 for row in rows if row.error is not None)
    logger.debug(f"Experiment finished: {len(rows)} rows, {failed} failed")
    return rows


def rows_to_frame(rows: Sequence[ResultRow]) -> pd.DataFrame:
    """
    Result rows as a DataFrame with the report columns plus `error`.

    `trials` and `retries` use the nullable Int64 dtype so the counts stay
    integers next to the rows that leave them empty.
    """
    columns = Config.REPORT_COLUMNS + ['error']
    df = pd.DataFrame([row.to_record() for row in rows], columns=columns)
    return df.astype({'trials': 'Int64', 'retries': 'Int64'})


def dominance_ratios(rows: Sequence[ResultRow]) -> pd.DataFrame:
    """
    Median HereditaryMinimize disc over median Sample disc per instance class.

    Failed rows are excluded from the medians. The ratio is 1 when both
    medians are 0 and infinite when only Sample's is.

    Args:
        rows: Experiment rows

    Returns:
        DataFrame with columns kind, m, n, hereditary, sample, ratio
    """
    columns = ['kind', 'm', 'n', 'hereditary', 'sample', 'ratio']
    df = rows_to_frame(rows)
    df = df[df['error'].isna() & df['algorithm'].isin(['hereditary', 'sample'])]
    if df.empty:
        return pd.DataFrame(columns=columns)

    medians = (df.groupby(['kind', 'm', 'n', 'algorithm'], sort=False)['disc']
               .median().unstack('algorithm'))
    if 'hereditary' not in medians or 'sample' not in medians:
        return pd.DataFrame(columns=columns)
    medians = medians.dropna(subset=['hereditary', 'sample']).reset_index()

    def ratio(record):
        if record['sample'] > 0:
            return record['hereditary'] / record['sample']
        return 1.0 if record['hereditary'] == 0 else float('inf')

    medians['ratio'] = medians.apply(ratio, axis=1) if not medians.empty else []
    return medians[columns].reset_index(drop=True)
