import math
from dataclasses import replace

import numpy as np
import pytest

from herdisc.config import Config, ContractViolationError, RetryLimitError
from herdisc.core import coloring as coloring_module
from herdisc.core.coloring import (
    Coloring,
    disc_inf,
    hereditary_minimize,
    partial_coloring,
    partial_coloring_params,
    reduce_wide,
    step_cap,
)
from herdisc.core.linalg import OrthonormalBasis, RandomSource, sample_gaussian_rows
from herdisc.core.oracles import brute_force_disc
from herdisc.core.structure import project_to_small_rows


def assert_success_contract(A, x, outcome):
    n = A.shape[1]
    assert outcome.success
    assert np.max(np.abs(outcome.x)) == 1.0
    at_bound = np.flatnonzero(np.abs(outcome.x) == 1.0)
    assert at_bound.size >= math.ceil(n / 2)
    assert set(outcome.frozen.tolist()) <= set(at_bound.tolist())
    drift = np.max(np.abs(A @ (outcome.x - x)))
    limit = outcome.tau + outcome.eta
    assert drift <= limit + 1e-6 * (1.0 + limit)


class TestParams:
    def test_one_by_one(self):
        eps, steps, tau = partial_coloring_params(np.ones((1, 1)), 0.0)
        assert eps == pytest.approx(1.0 / 16.0)
        assert steps == 4352
        assert tau == 0.0

    def test_square_256(self):
        eps, steps, tau = partial_coloring_params((256, 256), 2.0)
        assert eps == pytest.approx(1.0 / 256.0)
        assert steps == 1114112
        assert tau == pytest.approx(22.0 / 256.0 * 2.0 * math.sqrt(1114112 * 8))

    def test_tau_is_linear_in_eta(self):
        _, _, tau1 = partial_coloring_params((30, 10), 1.0)
        _, _, tau3 = partial_coloring_params((30, 10), 3.0)
        assert tau3 == pytest.approx(3.0 * tau1)


class TestStepCap:
    def test_origin(self):
        assert step_cap(np.zeros(2), np.array([1.0, 0.0])) == 1.0

    def test_half(self):
        assert step_cap(np.array([0.5, 0.0]), np.array([1.0, 0.0])) == 0.5

    def test_closed_form(self):
        assert step_cap(np.array([0.2, -0.4]), np.array([2.0, 1.0])) == pytest.approx(0.4)

    def test_frozen_coordinates_are_ignored(self):
        assert step_cap(np.array([1.0, 0.0]), np.array([0.0, 2.0]), frozen={0}) == 0.5

    def test_unbounded(self):
        assert step_cap(np.array([0.3, 1.0]), np.array([0.0, 1.0]), frozen=[1]) == math.inf

    def test_rejects_point_outside_box(self):
        with pytest.raises(ContractViolationError):
            step_cap(np.array([1.1, 0.0]), np.array([1.0, 1.0]))

    def test_both_directions_stay_in_box(self):
        rng = RandomSource(6)
        for _ in range(50):
            c = 1.8 * rng.uniform(5) - 0.9
            g = rng.gaussian(5)
            mu = step_cap(c, g)
            assert np.max(np.abs(c + mu * g)) <= 1.0 + 1e-12
            assert np.max(np.abs(c - mu * g)) == pytest.approx(1.0) or \
                np.max(np.abs(c + mu * g)) == pytest.approx(1.0)


class TestPartialColoring:
    def test_zero_matrix(self):
        A = np.zeros((4, 4))
        outcome = partial_coloring(A, np.zeros(4), RandomSource(1))
        assert outcome.tau == 0.0 and outcome.eta == 0.0
        assert_success_contract(A, np.zeros(4), outcome)

    def test_identity(self):
        A = np.eye(4)
        for seed in range(5):
            outcome = partial_coloring(A, np.zeros(4), RandomSource(seed))
            assert outcome.eta <= 1.0
            if outcome.success:
                assert_success_contract(A, np.zeros(4), outcome)

    def test_starting_point_inside_box(self):
        A = RandomSource(2).signs((6, 6))
        x = 0.5 * RandomSource(3).signs(6)
        outcome = partial_coloring(A, x, RandomSource(4))
        if outcome.success:
            assert_success_contract(A, x, outcome)
        else:
            assert outcome.reason in ('row_violation', 'steps_exhausted', 'degenerate')
            assert outcome.x is None

    def test_rejects_point_on_boundary(self):
        with pytest.raises(ContractViolationError):
            partial_coloring(np.eye(2), np.array([1.0, 0.0]), RandomSource(0))

    def test_rejects_wide_matrix(self):
        with pytest.raises(ContractViolationError):
            partial_coloring(np.ones((1, 2)), np.zeros(2), RandomSource(0))

    def test_precomputed_certificate_gives_same_walk(self):
        A = RandomSource(12).signs((10, 8))
        cert = project_to_small_rows(A)
        first = partial_coloring(A, np.zeros(8), RandomSource(5), certificate=cert)
        second = partial_coloring(A, np.zeros(8), RandomSource(5))
        assert first.success == second.success
        assert first.iterations == second.iterations
        if first.success:
            np.testing.assert_array_equal(first.x, second.x)
        # The certificate's basis is copied, never extended
        assert cert.basis.size == project_to_small_rows(A).basis.size

    def test_success_fraction_and_contract(self):
        A = RandomSource(77).signs((8, 8))
        successes = 0
        for seed in range(40):
            outcome = partial_coloring(A, np.zeros(8), RandomSource(seed))
            if outcome.success:
                successes += 1
                assert_success_contract(A, np.zeros(8), outcome)
        assert successes / 40 >= 0.08

    @pytest.mark.slow
    def test_success_contract_16x16(self):
        successes = 0
        for seed in range(200):
            A = RandomSource(10_000 + seed).signs((16, 16))
            outcome = partial_coloring(A, np.zeros(16), RandomSource(seed))
            if outcome.success:
                successes += 1
                assert_success_contract(A, np.zeros(16), outcome)
        assert successes / 200 >= 0.08


def scaled_tau(factor, fixed_tau=None):
    real = partial_coloring_params

    def params(shape, eta):
        eps, steps, tau = real(shape, eta)
        return eps, steps, fixed_tau if fixed_tau is not None else factor * tau
    return params


class TestRowSaturation:
    def test_walk_invariants_hold_every_step(self, monkeypatch):
        # tau = eta / 2: rows cross it long before the walk ends
        monkeypatch.setattr(coloring_module, "partial_coloring_params", scaled_tau(1 / 512))
        saturations = 0
        for seed in range(6):
            A = RandomSource(300 + seed).signs((24, 16))
            x = np.zeros(16)
            pinned_coords, pinned_products = {}, {}

            def check(state):
                point = state.point
                assert np.max(np.abs(point)) <= 1.0 + Config.BOX_TOLERANCE
                for i in np.flatnonzero(state.frozen):
                    assert point[i] == pinned_coords.setdefault(i, point[i])
                for i in state.saturated_rows:
                    product = A[i] @ state.v
                    first = pinned_products.setdefault(i, product)
                    assert abs(product - first) <= 1e-6 * np.linalg.norm(A[i])
                    assert abs(product) <= state.tau + state.eta + 1e-9

            outcome = partial_coloring(A, x, RandomSource(seed), on_step=check)
            assert set(pinned_products) == set(outcome.saturated_rows.tolist())
            saturations += outcome.saturated_rows.size
            if outcome.success:
                assert_success_contract(A, x, outcome)
        assert saturations > 0

    def test_row_violation(self, monkeypatch):
        monkeypatch.setattr(coloring_module, "partial_coloring_params",
                            scaled_tau(1.0, fixed_tau=1e-3))
        A = RandomSource(5).signs((16, 16))
        certificate = replace(project_to_small_rows(A), eta=0.0)
        outcome = partial_coloring(A, np.zeros(16), RandomSource(1), certificate=certificate)
        assert not outcome.success
        assert outcome.reason == 'row_violation'
        assert outcome.x is None
        assert outcome.iterations == 1

    def test_real_threshold_leaves_rows_free(self):
        A = RandomSource(8).signs((16, 16))
        outcome = partial_coloring(A, np.zeros(16), RandomSource(2))
        assert outcome.tau > 100 * outcome.eta
        assert outcome.saturated_rows.size == 0

    def test_round_record_counts_saturations(self, monkeypatch):
        real = coloring_module.partial_coloring

        def marked(A, x, rng, certificate=None):
            outcome = real(A, x, rng, certificate=certificate)
            outcome.saturated_rows = np.array([0, 1])
            return outcome

        monkeypatch.setattr(coloring_module, "partial_coloring", marked)
        _, report = hereditary_minimize(RandomSource(3).signs((8, 8)), RandomSource(3))
        assert all(r.saturated_rows == 2 for r in report.rounds)
        assert report.to_dict()['rounds'][0]['saturated_rows'] == 2


class TestReduceWide:
    def test_single_row(self):
        A = np.array([[1.0, 1.0]])
        x, free = reduce_wide(A, RandomSource(0))
        assert free.size == 0
        assert sorted(x.tolist()) == [-1.0, 1.0]

    def test_zero_row(self):
        x, free = reduce_wide(np.zeros((1, 3)), RandomSource(3))
        assert free.size == 0
        assert np.all(np.abs(x) == 1.0)

    @pytest.mark.parametrize("m,n", [(2, 5), (3, 8)])
    def test_null_space_contract(self, m, n):
        for seed in range(20):
            A = RandomSource(seed).gaussian(m * n).reshape(m, n)
            x, free = reduce_wide(A, RandomSource(100 + seed))
            assert np.max(np.abs(A @ x)) <= 1e-6 * np.linalg.norm(A) * math.sqrt(n)
            frozen = np.setdiff1d(np.arange(n), free)
            assert frozen.size >= n - m
            assert np.all(np.abs(x[frozen]) == 1.0)
            assert np.all(np.abs(x[free]) < 1.0)

    def test_rejects_tall_matrix(self):
        with pytest.raises(ContractViolationError):
            reduce_wide(np.ones((3, 3)), RandomSource(0))


class TestHereditaryMinimize:
    def test_zero_matrix(self):
        coloring, report = hereditary_minimize(np.zeros((5, 3)), RandomSource(0))
        assert np.all(np.abs(coloring.signs) == 1.0)
        assert report.final_disc == 0.0

    def test_one_by_one(self):
        coloring, report = hereditary_minimize(np.array([[2.5]]), RandomSource(1))
        assert coloring.signs[0] in (-1.0, 1.0)
        assert report.final_disc == 2.5

    def test_wide_matrix(self):
        A = RandomSource(8).signs((3, 9))
        coloring, report = hereditary_minimize(A, RandomSource(2))
        assert len(coloring) == 9
        assert report.final_disc == disc_inf(A, coloring.signs)
        assert report.reduction_residual <= 1e-9

    def test_accounting_and_round_count(self):
        n = 16
        for seed in range(20):
            A = RandomSource(seed).signs((n, n))
            coloring, report = hereditary_minimize(A, RandomSource(500 + seed))
            assert report.final_disc == disc_inf(A, coloring.signs)
            assert report.within_bound()
            assert len(report.rounds) <= math.ceil(math.log2(n)) + 1
            counts = [r.free_count for r in report.rounds]
            assert all(b <= a // 2 for a, b in zip(counts, counts[1:]))

    def test_not_better_than_optimum(self):
        for seed in range(10):
            A = RandomSource(seed).signs((6, 6))
            coloring, report = hereditary_minimize(A, RandomSource(seed))
            disc, _ = brute_force_disc(A)
            assert report.final_disc >= disc

    def test_deterministic(self):
        A = RandomSource(3).signs((12, 10))
        first, _ = hereditary_minimize(A, RandomSource(9))
        second, _ = hereditary_minimize(A, RandomSource(9))
        np.testing.assert_array_equal(first.signs, second.signs)

    def test_report_serializes(self):
        _, report = hereditary_minimize(RandomSource(1).signs((6, 4)), RandomSource(1))
        data = report.to_dict()
        assert data['seed'] == 1
        assert len(data['rounds']) == len(report.rounds)
        assert set(data['rounds'][0]['failures_by_reason']) == {
            'row_violation', 'steps_exhausted', 'degenerate'}

    def test_retry_limit(self, monkeypatch):
        from herdisc.core import coloring as coloring_module

        def always_fail(A, x, rng, certificate=None):
            return coloring_module.PartialColoringOutcome(
                success=False, x=None, frozen=np.array([], dtype=int), reason='steps_exhausted',
                iterations=1, eps=0.1, steps=1, tau=0.0, eta=0.0)

        monkeypatch.setattr(coloring_module, "partial_coloring", always_fail)
        monkeypatch.setattr(Config, "PARTIAL_COLORING_RETRY_LIMIT", 3)
        with pytest.raises(RetryLimitError) as excinfo:
            hereditary_minimize(np.eye(2), RandomSource(0))
        assert excinfo.value.round_number == 1
        assert excinfo.value.retries == 3


class TestDisc:
    def test_examples(self):
        assert disc_inf([[1, 1], [1, -1]], [1, -1]) == 2.0
        assert disc_inf(np.eye(3), [1, -1, 1]) == 1.0
        assert disc_inf(RandomSource(1).signs((4, 4)), np.zeros(4)) == 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(ContractViolationError):
            disc_inf(np.eye(3), [1, 1])


class TestColoring:
    def test_rejects_fractional(self):
        with pytest.raises(ContractViolationError):
            Coloring(np.array([1.0, 0.5]))

    def test_as_ints(self):
        assert Coloring(np.array([1.0, -1.0])).as_ints().tolist() == [1, -1]


class TestStepBlock:
    def test_pending_steps_follow_basis_growth(self):
        A = RandomSource(1).signs((10, 6))
        basis = OrthonormalBasis(6)
        block = coloring_module._StepBlock(A, basis, RandomSource(2), 4)
        raw = sample_gaussian_rows(4, 6, RandomSource(2))
        g, image = block.next()
        np.testing.assert_allclose(g, raw[0])
        basis.orthogonalize(RandomSource(3).gaussian(6))
        g, image = block.next()
        np.testing.assert_allclose(g, basis.project(raw[1]), atol=1e-12)
        np.testing.assert_allclose(image, A @ g, atol=1e-10)
        assert block.cursor == 2 and not block.exhausted

    @pytest.mark.parametrize("variant", ["one_step_at_a_time", "single_row_blocks"])
    def test_batching_does_not_change_walk(self, monkeypatch, variant):
        A = RandomSource(6).signs((12, 10))
        x = 0.3 * RandomSource(7).signs(10)
        expected = [partial_coloring(A, x, RandomSource(seed)) for seed in range(3)]

        if variant == "one_step_at_a_time":
            monkeypatch.setattr(coloring_module, "_free_run", lambda *args: 0)
        else:
            monkeypatch.setattr(Config, "WALK_BATCH_SIZE", 1)
        for seed, reference in enumerate(expected):
            outcome = partial_coloring(A, x, RandomSource(seed))
            assert outcome.success == reference.success
            assert outcome.iterations == reference.iterations
            np.testing.assert_array_equal(outcome.frozen, reference.frozen)
            if outcome.success:
                np.testing.assert_allclose(outcome.x, reference.x, atol=1e-9)
