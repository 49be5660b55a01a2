"""Energy ledger and stability certificates, anchored on hand-computed traces."""

import dataclasses
import math

import numpy as np
import pytest
from scipy.special import erfc as scipy_erfc

from dsvolterra import (
    FilterState,
    IterationRecord,
    NoiseSpec,
    SignalSpec,
    ThresholdPolicy,
    UndefinedRatioError,
    VolterraConfig,
    check_conditional_improvement,
    check_local,
    ds_vnlms_step,
    erfc_bound,
    generate_input,
    generate_noise,
    global_ratio,
    monotonicity_stats,
    prefix_ratios,
    push_sample,
    read_trace_csv,
    record_iteration,
    summarize_run,
    verify_trace,
    write_trace_csv,
)
from dsvolterra.robustness import TRACE_COLUMNS, _erfc


def run_hand_trace(inputs, desired, gamma, w_star, config):
    """Stream a short DS trace and return its ledger."""
    state = FilterState(config)
    policy = ThresholdPolicy.fixed(gamma)
    records = []
    for sample, d in zip(inputs, desired):
        push_sample(state, sample)
        w_before = state.w
        out = ds_vnlms_step(state, d, policy)
        records.append(record_iteration(w_star, w_before, state.w, out, 0.0))
    return records


def random_run(seed=0, iters=300, gamma=0.15, noise_kind="gaussian"):
    """A short randomized run against the unit-tap system, full ledger."""
    config = VolterraConfig(2, 2, regularization=1e-9)
    from dsvolterra import Channel, desired_signal, total_dimension

    w_star = np.zeros(total_dimension(config))
    w_star[0] = 1.0
    w_star[3] = -0.4
    x = generate_input(SignalSpec("white_gaussian", variance=1.0, seed=seed), iters)
    if noise_kind == "gaussian":
        noise = generate_noise(NoiseSpec("gaussian", variance=0.01, seed=seed + 1), iters)
    else:
        noise = generate_noise(
            NoiseSpec("uniform_bounded", bound=0.1, seed=seed + 1), iters
        )
    d = desired_signal(Channel(w_star, config), x, noise)
    state = FilterState(config)
    policy = ThresholdPolicy.fixed(gamma)
    records = []
    for k in range(iters):
        push_sample(state, x[k])
        w_before = state.w
        out = ds_vnlms_step(state, d[k], policy)
        records.append(record_iteration(w_star, w_before, state.w, out, noise[k]))
    return records


class TestCanonicalSingleUpdate:
    """w* = e1, w(0) = 0, unit regressor, d = 1, gamma = 0.5, delta = 0."""

    @pytest.fixture()
    def record(self):
        config = VolterraConfig(1, 1, regularization=0.0)
        return run_hand_trace([1.0], [1.0], 0.5, np.array([1.0, 0.0]), config)[0]

    def test_fields(self, record):
        assert record.updated is True
        assert record.e == 1.0
        assert record.e_tilde == 1.0
        assert record.mu_bar == 0.5
        assert record.alpha == 1.0
        assert record.wtilde_sq_before == 1.0
        assert record.wtilde_sq_after == 0.25

    def test_lhs_rhs(self, record):
        assert record.lhs == pytest.approx(0.75, rel=1e-12)
        assert record.rhs == pytest.approx(1.0, rel=1e-12)
        assert check_local(record)

    def test_global_ratio(self, record):
        assert global_ratio([record], record.wtilde_sq_before) == pytest.approx(
            0.75, rel=1e-12
        )

    def test_conditional_improvement(self, record):
        # noiseless error dominates (n = 0) and the energy drops 1 -> 0.25
        assert check_conditional_improvement(record)


class TestThreeStepHandTrace:
    """Single-tap system w* = 1, inputs [1, 1, 2], zero noise, gamma = 0.5,
    delta = 0.  All intermediate values are exact dyadic rationals:

        k=0: e=1.0, update, mu=0.5, alpha=1, w: 0 -> 0.5,
             energies 1 -> 0.25, lhs=0.75, rhs=1.0
        k=1: e=0.5 = gamma, no update, lhs = rhs = 0.25
        k=2: e=1.0, update, mu=0.5, alpha=4, w: 0.5 -> 0.75,
             energies 0.25 -> 0.0625, lhs=0.1875, rhs=0.25
    """

    EXPECTED = [
        # (updated, e, e_tilde, mu_bar, alpha, before, after, lhs, rhs)
        (True, 1.0, 1.0, 0.5, 1.0, 1.0, 0.25, 0.75, 1.0),
        (False, 0.5, 0.5, 0.0, 1.0, 0.25, 0.25, 0.25, 0.25),
        (True, 1.0, 1.0, 0.5, 4.0, 0.25, 0.0625, 0.1875, 0.25),
    ]

    @pytest.fixture()
    def records(self):
        config = VolterraConfig(1, 0, regularization=0.0)
        return run_hand_trace(
            [1.0, 1.0, 2.0], [1.0, 1.0, 2.0], 0.5, np.array([1.0]), config
        )

    def test_rows_match_frozen_table(self, records):
        assert len(records) == 3
        for record, expected in zip(records, self.EXPECTED):
            updated, e, e_tilde, mu_bar, alpha, before, after, lhs, rhs = expected
            assert record.updated == updated
            assert record.e == pytest.approx(e, rel=1e-12)
            assert record.e_tilde == pytest.approx(e_tilde, rel=1e-12)
            assert record.mu_bar == pytest.approx(mu_bar, rel=1e-12, abs=0)
            assert record.alpha == pytest.approx(alpha, rel=1e-12)
            assert record.wtilde_sq_before == pytest.approx(before, rel=1e-12)
            assert record.wtilde_sq_after == pytest.approx(after, rel=1e-12)
            assert record.lhs == pytest.approx(lhs, rel=1e-12)
            assert record.rhs == pytest.approx(rhs, rel=1e-12)

    def test_zero_noise_margin_positive_on_updates(self, records):
        for record in records:
            if record.updated:
                assert record.rhs - record.lhs > 0.0

    def test_prefix_ratios(self, records):
        ratios = prefix_ratios(records, records[0].wtilde_sq_before)
        np.testing.assert_allclose(ratios, [0.75, 0.75, 0.6875], rtol=1e-12)

    def test_global_ratio(self, records):
        assert global_ratio(records, 1.0) == pytest.approx(0.6875, rel=1e-12)

    def test_no_increases(self, records):
        count, fraction, _ = monotonicity_stats(records)
        assert count == 0
        assert fraction == 0.0


class TestCheckLocal:
    def test_non_updated_requires_equality(self):
        record = IterationRecord(
            k=0, e=0.1, e_tilde=0.1, n=0.0, updated=False, mu_bar=0.0, alpha=1.0,
            gamma_used=0.5, wtilde_sq_before=1.0, wtilde_sq_after=1.0, lhs=1.0, rhs=1.0,
        )
        assert check_local(record)

    def test_synthetic_violation_detected(self):
        # negative control: the checker must flag lhs > rhs on an update
        record = IterationRecord(
            k=0, e=1.0, e_tilde=1.0, n=0.0, updated=True, mu_bar=0.5, alpha=1.0,
            gamma_used=0.5, wtilde_sq_before=1.0, wtilde_sq_after=1.5, lhs=2.0, rhs=1.0,
        )
        assert not check_local(record)

    def test_non_updated_drift_detected(self):
        record = IterationRecord(
            k=0, e=0.1, e_tilde=0.1, n=0.0, updated=False, mu_bar=0.0, alpha=1.0,
            gamma_used=0.5, wtilde_sq_before=1.0, wtilde_sq_after=1.01, lhs=1.01, rhs=1.0,
        )
        assert not check_local(record)


class TestConditionalImprovement:
    def test_vacuous_when_not_updated(self):
        record = IterationRecord(
            k=0, e=0.1, e_tilde=2.0, n=0.0, updated=False, mu_bar=0.0, alpha=1.0,
            gamma_used=0.5, wtilde_sq_before=1.0, wtilde_sq_after=1.0, lhs=1.0, rhs=1.0,
        )
        assert check_conditional_improvement(record)

    def test_vacuous_when_noise_dominates(self):
        record = IterationRecord(
            k=0, e=1.0, e_tilde=0.1, n=0.9, updated=True, mu_bar=0.5, alpha=1.0,
            gamma_used=0.5, wtilde_sq_before=1.0, wtilde_sq_after=1.2, lhs=1.2, rhs=1.4,
        )
        assert check_conditional_improvement(record)

    def test_violation_detected(self):
        record = IterationRecord(
            k=0, e=1.0, e_tilde=1.0, n=0.0, updated=True, mu_bar=0.5, alpha=1.0,
            gamma_used=0.5, wtilde_sq_before=1.0, wtilde_sq_after=1.0, lhs=1.5, rhs=1.0,
        )
        assert not check_conditional_improvement(record)


class TestGlobalRatio:
    def test_vacuous_run_sits_on_boundary(self):
        # no updates ever: ratio collapses to ||w~(0)||^2 / ||w~(0)||^2 = 1
        record = IterationRecord(
            k=0, e=0.1, e_tilde=0.1, n=0.0, updated=False, mu_bar=0.0, alpha=1.0,
            gamma_used=0.5, wtilde_sq_before=2.0, wtilde_sq_after=2.0, lhs=2.0, rhs=2.0,
        )
        assert global_ratio([record], 2.0) == 1.0

    def test_zero_denominator_raises(self):
        record = IterationRecord(
            k=0, e=0.0, e_tilde=0.0, n=0.0, updated=False, mu_bar=0.0, alpha=1.0,
            gamma_used=0.5, wtilde_sq_before=0.0, wtilde_sq_after=0.0, lhs=0.0, rhs=0.0,
        )
        with pytest.raises(UndefinedRatioError):
            global_ratio([record], 0.0)

    def test_empty_sequence_rejected(self):
        with pytest.raises(ValueError):
            global_ratio([], 1.0)


class TestRandomizedRunInvariants:
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_local_certificate_every_row(self, seed):
        records = random_run(seed=seed)
        assert all(check_local(r) for r in records)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_conditional_improvement_every_row(self, seed):
        records = random_run(seed=seed)
        assert all(check_conditional_improvement(r) for r in records)

    def test_error_decomposition(self):
        for record in random_run(seed=3):
            assert abs(record.e - (record.e_tilde + record.n)) <= 1e-12 * max(
                1.0, abs(record.e), abs(record.e_tilde + record.n)
            )

    def test_energy_chain_is_continuous(self):
        records = random_run(seed=4)
        for a, b in zip(records, records[1:]):
            assert a.wtilde_sq_after == b.wtilde_sq_before

    def test_prefix_ratios_below_one_once_updated(self):
        records = random_run(seed=5)
        ratios = prefix_ratios(records, records[0].wtilde_sq_before)
        updated = np.cumsum([r.updated for r in records])
        assert np.all(ratios[updated >= 1] < 1.0 + 1e-10)

    def test_bounded_noise_with_double_threshold_never_increases(self):
        records = random_run(seed=6, gamma=0.2, noise_kind="uniform_bounded")
        count, fraction, _ = monotonicity_stats(records)
        assert count == 0
        assert fraction == 0.0

    def test_summary_consistency(self):
        records = random_run(seed=7)
        verdict = summarize_run(records, tau_for_bound=2.25)
        assert verdict.total_iterations == len(records)
        assert verdict.update_count == sum(r.updated for r in records)
        assert verdict.update_rate == verdict.update_count / verdict.total_iterations
        assert verdict.local_violations == 0
        assert verdict.conditional_violations == 0
        assert 0.0 < verdict.global_ratio < 1.0
        assert verdict.erfc_bound == pytest.approx(_erfc(math.sqrt(2.25 / 2)), rel=1e-15)
        payload = verdict.as_dict()
        assert payload["update_count"] == verdict.update_count
        assert set(payload) == {
            "total_iterations", "update_count", "update_rate", "local_violations",
            "conditional_violations", "global_ratio", "increase_count",
            "increase_fraction", "increases_in_transient", "erfc_bound",
            "wtilde_sq_initial", "wtilde_sq_final",
        }


class TestErfc:
    def test_reference_tau_values(self):
        # tabulated to four figures (the first is truncated, not rounded)
        assert abs(erfc_bound(3.0) - 0.0832) < 1e-4
        assert abs(erfc_bound(4.0) - 0.0455) < 1e-4
        assert abs(erfc_bound(5.0) - 0.0253) < 1e-4

    def test_matches_scipy_across_range(self):
        xs = np.concatenate(
            [np.linspace(1e-6, 1.999, 400), np.linspace(2.0, 6.0, 400)]
        )
        for x in xs:
            assert _erfc(float(x)) == pytest.approx(
                float(scipy_erfc(x)), rel=1e-10, abs=1e-13
            )

    def test_negative_argument_symmetry(self):
        assert _erfc(-1.3) == pytest.approx(2.0 - _erfc(1.3), rel=1e-14)

    def test_bound_in_unit_interval(self):
        for tau in (0.1, 1.0, 5.0, 9.0, 40.0):
            assert 0.0 < erfc_bound(tau) < 1.0

    @pytest.mark.parametrize("tau", [0.0, -1.0, float("nan")])
    def test_rejects_degenerate_tau(self, tau):
        with pytest.raises(ValueError):
            erfc_bound(tau)


class TestTraceCsv:
    def test_round_trip_is_exact(self, tmp_path):
        records = random_run(seed=8, iters=120)
        path = tmp_path / "trace.csv"
        write_trace_csv(records, path)
        back = read_trace_csv(path)
        assert len(back) == len(records)
        for a, b in zip(records, back):
            assert b.in_transient is None
            for field in TRACE_COLUMNS:
                assert getattr(a, field) == getattr(b, field), field

    def test_dialect(self, tmp_path):
        records = random_run(seed=9, iters=10)
        path = tmp_path / "trace.csv"
        write_trace_csv(records, path)
        raw = path.read_bytes().decode()
        lines = raw.split("\n")
        assert lines[0] == ",".join(TRACE_COLUMNS)
        assert "\r" not in raw
        assert raw.endswith("\n")

    def test_bad_header_rejected(self, tmp_path):
        path = tmp_path / "bogus.csv"
        path.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(ValueError):
            read_trace_csv(path)

    def test_verify_trace_clean(self, tmp_path):
        records = random_run(seed=10, iters=200)
        path = tmp_path / "trace.csv"
        write_trace_csv(records, path)
        assert verify_trace(read_trace_csv(path)) == []

    def test_verify_trace_flags_corruption(self, tmp_path):
        records = random_run(seed=11, iters=200)
        path = tmp_path / "trace.csv"
        # raise one lhs above its rhs
        target = next(i for i, r in enumerate(records) if r.updated)
        corrupted = list(records)
        corrupted[target] = dataclasses.replace(
            records[target], lhs=records[target].rhs * 2.0 + 1.0
        )
        write_trace_csv(corrupted, path)
        problems = verify_trace(read_trace_csv(path))
        assert problems
        assert any(f"k={records[target].k}" in p for p in problems)
