#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Core modules for herdisc.

Provides the linear algebra primitives, the structural decomposition, the
coloring engine, exhaustive oracles, instance generators, the benchmark
harness and report generation.
"""

from .linalg import (
    OrthonormalBasis,
    RandomSource,
    as_dense_matrix,
    orthogonalize,
    project_complement,
    project_rows_complement,
    sym_eig_desc,
    sample_gaussian,
)
from .structure import (
    SpectralCertificate,
    LowerBoundReport,
    project_to_small_rows,
    herdisc_lower_bound,
    certified_row_bound,
)
from .coloring import (
    Coloring,
    PartialColoringState,
    PartialColoringOutcome,
    RoundRecord,
    RunReport,
    disc_inf,
    partial_coloring_params,
    step_cap,
    partial_coloring,
    hereditary_minimize,
    reduce_wide,
)
from .oracles import OracleBudget, brute_force_disc, brute_force_herdisc
from .instances import (
    InstanceSpec,
    Halfspace,
    gen_uniform,
    gen_corner,
    gen_halfspace,
    gen_zero,
    generate,
    corner_matrix,
    halfspace_matrix,
)
from .bench import (
    ExperimentConfig,
    ResultRow,
    SampleBudget,
    SampleManyResult,
    baseline_sample,
    baseline_sample_many,
    run_experiment,
    dominance_ratios,
)
from .report import emit_report

__all__ = [
    'OrthonormalBasis',
    'RandomSource',
    'as_dense_matrix',
    'orthogonalize',
    'project_complement',
    'project_rows_complement',
    'sym_eig_desc',
    'sample_gaussian',
    'SpectralCertificate',
    'LowerBoundReport',
    'project_to_small_rows',
    'herdisc_lower_bound',
    'certified_row_bound',
    'Coloring',
    'PartialColoringState',
    'PartialColoringOutcome',
    'RoundRecord',
    'RunReport',
    'disc_inf',
    'partial_coloring_params',
    'step_cap',
    'partial_coloring',
    'hereditary_minimize',
    'reduce_wide',
    'OracleBudget',
    'brute_force_disc',
    'brute_force_herdisc',
    'InstanceSpec',
    'Halfspace',
    'gen_uniform',
    'gen_corner',
    'gen_halfspace',
    'gen_zero',
    'generate',
    'corner_matrix',
    'halfspace_matrix',
    'ExperimentConfig',
    'ResultRow',
    'SampleBudget',
    'SampleManyResult',
    'baseline_sample',
    'baseline_sample_many',
    'run_experiment',
    'dominance_ratios',
    'emit_report'
]
