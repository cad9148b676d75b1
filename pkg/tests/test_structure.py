import logging
import math

import numpy as np
import pytest

from herdisc.config import Config, ContractViolationError
from herdisc.core.linalg import RandomSource, project_rows_complement, row_norms
from herdisc.core.oracles import brute_force_herdisc
from herdisc.core.structure import (
    herdisc_lower_bound,
    certified_row_bound,
    project_to_small_rows,
    small_rows_schedule,
)


class TestProjectToSmallRows:
    def test_all_ones_is_annihilated_by_one_eigenvector(self):
        cert = project_to_small_rows(np.ones((8, 4)))
        assert cert.basis.size == 1
        np.testing.assert_allclose(np.abs(cert.basis.rows[0]), 0.5, atol=1e-12)
        assert cert.eta == 0.0
        np.testing.assert_array_equal(cert.residual_row_norms, np.zeros(8))

    def test_identity_eta_at_most_one(self):
        cert = project_to_small_rows(np.eye(4))
        assert cert.eta <= 1.0 + 1e-12
        assert cert.basis.size <= 1

    def test_zero_matrix(self):
        cert = project_to_small_rows(np.zeros((6, 6)))
        assert cert.basis.size == 0
        assert cert.eta == 0.0

    def test_rejects_wide_matrix(self):
        with pytest.raises(ContractViolationError):
            project_to_small_rows(np.ones((2, 3)))

    def test_residual_norms_match_basis(self):
        A = RandomSource(3).signs((40, 16))
        cert = project_to_small_rows(A)
        expected = row_norms(project_rows_complement(A, cert.basis))
        np.testing.assert_allclose(cert.residual_row_norms, expected, atol=1e-9)
        assert abs(cert.eta - cert.residual_row_norms.max()) <= 1e-9

    @pytest.mark.parametrize("m,n", [(8, 8), (20, 9), (64, 32), (100, 13), (300, 40)])
    def test_basis_size_budget(self, m, n):
        cert = project_to_small_rows(RandomSource(m * n).signs((m, n)))
        assert cert.basis.size <= n // 4
        assert cert.eigen_insertions <= max(1, n // 8)
        off_diagonal, norm_error = cert.basis.orthonormality_residual()
        assert off_diagonal <= 1e-8 and norm_error <= 1e-8

    def test_deterministic(self):
        A = RandomSource(9).signs((30, 12))
        first, second = project_to_small_rows(A), project_to_small_rows(A)
        np.testing.assert_array_equal(first.basis.rows, second.basis.rows)
        assert first.eta == second.eta

    def test_residual_norms_never_grow(self):
        A = RandomSource(21).signs((48, 24))
        cert = project_to_small_rows(A)
        previous = row_norms(A)
        for k in range(1, cert.basis.size + 1):
            current = row_norms(project_rows_complement(A, cert.basis.truncated(k)))
            assert np.all(current <= previous + 1e-8)
            previous = current

    def test_schedule_counts(self):
        schedule = small_rows_schedule(1000, 1000)
        assert schedule['iterations'] == 3
        assert schedule['per_iteration'] == 41
        assert schedule['final_rows'] == 125
        assert schedule['basis_cap'] == 250

    def test_row_bound_with_exact_herdisc(self):
        for seed in range(8):
            n = 8 + seed % 3
            A = RandomSource(seed).signs((2 * n, n))
            cert = project_to_small_rows(A)
            assert cert.basis.size <= n // 4
            bound = certified_row_bound(2 * n, n, brute_force_herdisc(A))
            assert cert.eta <= bound + 1e-9

    def test_orthonormal_basis_logs_nothing(self, caplog):
        with caplog.at_level(logging.WARNING, logger="herdisc.core.structure"):
            project_to_small_rows(RandomSource(4).signs((64, 32)))
        assert not caplog.records

    def test_orthonormality_drift_is_logged(self, caplog, monkeypatch):
        monkeypatch.setattr(Config, "ORTHONORMALITY_TOLERANCE", -1.0)
        with caplog.at_level(logging.WARNING, logger="herdisc.core.structure"):
            project_to_small_rows(RandomSource(4).signs((64, 32)))
        assert any("drifted from orthonormal" in r.getMessage() for r in caplog.records)

    @pytest.mark.slow
    def test_row_bound_with_exact_herdisc_many_seeds(self):
        for seed in range(50):
            n = 8 + seed % 3
            A = RandomSource(1000 + seed).signs((2 * n, n))
            cert = project_to_small_rows(A)
            assert cert.basis.size <= n // 4
            assert cert.eta <= certified_row_bound(2 * n, n, brute_force_herdisc(A)) + 1e-9


class TestHerdiscLowerBound:
    def test_zero_matrix(self):
        report = herdisc_lower_bound(np.zeros((3, 3)))
        assert report.value == 0.0
        assert report.argmax_k == 1

    @pytest.mark.parametrize("n", [1, 3, 6])
    def test_identity(self, n):
        report = herdisc_lower_bound(np.eye(n))
        assert report.value == pytest.approx(1.0 / (2.0 * math.e))
        assert report.argmax_k == n

    def test_all_ones(self):
        report = herdisc_lower_bound(np.ones((5, 5)))
        assert report.value == pytest.approx(1.0 / (2.0 * math.e))
        assert report.argmax_k == 1

    def test_eigenvalues_sorted(self):
        report = herdisc_lower_bound(RandomSource(4).gaussian(35).reshape(7, 5))
        assert np.all(np.diff(report.eigenvalues) <= 0)
        assert np.all(report.eigenvalues >= 0)

    def test_sound_against_exact_herdisc(self):
        for seed in range(40):
            rng = RandomSource(seed)
            n = 2 + seed % 7
            m = 1 + seed % 10
            A = rng.signs((m, n))
            assert herdisc_lower_bound(A).value <= brute_force_herdisc(A) + 1e-9

    @pytest.mark.slow
    def test_sound_against_exact_herdisc_many_seeds(self):
        for seed in range(200):
            rng = RandomSource(5000 + seed)
            A = rng.signs((1 + seed % 10, 1 + seed % 8))
            assert herdisc_lower_bound(A).value <= brute_force_herdisc(A) + 1e-9
