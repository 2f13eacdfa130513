"""DoF accounting, the eta_hat/Q sweep, optimality references, and the
association-skew statistics."""

import math
from fractions import Fraction

import pytest

from ccsched import (ConfigError, DeliveryParams, NetworkConfig, Schedule,
                     choose_mode, closed_form_dof, config_from_eta,
                     dof_loss_uniform, dof_sweep, empirical_dof, run_pipeline,
                     select_served, sigma, sigma_bin, sigma_experiment,
                     uniform_optimum, validate)
from ccsched.analysis import _association_count, _partitions_at_most
from support import ref_cfg, ref_params_a, ref_params_b


# ---- single-configuration DoF ----

def test_reference_strategy_a_dof():
    result = run_pipeline(ref_cfg(), ref_params_a())
    rep = result.report
    assert (rep.J_M, rep.T_M, rep.J_U, rep.T_U) == (33, 4, 6, 6)
    assert rep.empirical == Fraction(39, 10)
    assert rep.closed_form == Fraction(39, 10)
    assert result.ok


def test_reference_strategy_b_dof():
    result = run_pipeline(ref_cfg(), ref_params_b())
    rep = result.report
    assert (rep.J_M, rep.T_M, rep.J_U, rep.T_U) == (220, 24, 20, 20)
    assert rep.empirical == Fraction(60, 11)
    assert result.ok


def test_closed_form_without_unicast_branch():
    cfg = config_from_eta(3, 1, 6, 6, 12, (4, 4, 4))
    params = validate(cfg, DeliveryParams(4, 3, 4, "B"))
    part = select_served(cfg, 4)
    assert part.K_U == 0
    assert closed_form_dof(cfg, params, part) == Fraction(240, 24)
    assert run_pipeline(cfg, params).ok


def test_empirical_dof_rejects_empty_schedule():
    with pytest.raises(ConfigError) as err:
        empirical_dof(Schedule(cc=(), uc=()))
    assert err.value.code == "EMPTY_SCHEDULE"


# ---- sweep ----

REF_SWEEP_ROWS = [
    # eta_hat, Q, strategy, T_M, T_U, dof (None rows exceed P and stay infeasible)
    (1, 2, "A", 3, 3, Fraction(4)),
    (1, 3, "A", 1, 3, Fraction(21, 4)),
    (1, 4, "A", None, None, None),
    (1, 5, "A", None, None, None),
    (1, 6, "A", None, None, None),
    (1, 7, "A", None, None, None),
    (2, 2, "A", 6, 4, Fraction(24, 5)),
    (2, 3, "A", 2, 4, Fraction(6)),
    (2, 4, "A", None, None, None),
    (3, 2, "A", 9, 6, Fraction(24, 5)),
    (3, 3, "A", 3, 6, Fraction(5)),
    (4, 2, "A", 12, 8, Fraction(24, 5)),
    (4, 3, "B", 24, 20, Fraction(60, 11)),
    (5, 2, "A", 15, 0, Fraction(8)),
    (5, 3, "B", 30, 0, Fraction(44, 5)),
]


def test_reference_sweep_table():
    result = dof_sweep(ref_cfg())
    got = [(r.eta_hat, r.Q, r.strategy, r.T_M, r.T_U, r.dof) for r in result.rows]
    assert got == REF_SWEEP_ROWS
    assert [r.feasible for r in result.rows] == [dof is not None
                                                for *_, dof in REF_SWEEP_ROWS]
    assert (result.best.eta_hat, result.best.Q, result.best.strategy) == (5, 3, "B")
    assert result.dof_max == Fraction(44, 5)


def test_sweep_best_maximizes_then_breaks_ties_deterministically():
    for cfg in (ref_cfg(), config_from_eta(3, 1, 2, 2, 6, (2, 2, 2))):
        result = dof_sweep(cfg)
        feasible = [r for r in result.rows if r.feasible]
        assert result.dof_max == max(r.dof for r in feasible)
        for r in feasible:
            if r.dof == result.dof_max:
                assert (result.best.Q, result.best.eta_hat) <= (r.Q, r.eta_hat)


def test_sweep_rows_match_singleton_pipelines():
    cfg = config_from_eta(4, 1, 5, 5, 14, (5, 4, 3, 2))
    result = dof_sweep(cfg)
    for row in result.rows:
        if not row.feasible:
            assert row.T_M is None and row.dof is None
            continue
        params = validate(cfg, DeliveryParams(row.eta_hat, row.Q, row.beta, row.strategy))
        rep = run_pipeline(cfg, params).report
        assert rep.empirical == row.dof


# ---- optimality references ----

def test_uniform_optimum_examples():
    low = config_from_eta(6, 1, 4, 4, 24, (4,) * 6)
    assert uniform_optimum(low, 4) == 8        # alpha <= eta_hat: alpha(P*gamma+1)
    high = config_from_eta(6, 1, 7, 7, 30, (5,) * 6)
    assert uniform_optimum(high, 5) == 12      # alpha > eta_hat: K*gamma+alpha


def test_uniform_optimum_rejects_skewed_association():
    with pytest.raises(ConfigError) as err:
        uniform_optimum(ref_cfg(), 4)
    assert err.value.code == "NOT_UNIFORM"


def test_dof_loss_examples():
    assert dof_loss_uniform(8, 4, 2) == 4
    assert dof_loss_uniform(6, 6, 3) == 3
    assert dof_loss_uniform(6, 3, 3) == 0
    with pytest.raises(ConfigError) as err:
        dof_loss_uniform(7, 2, 1)
    assert err.value.code == "DIVISIBILITY"


def test_choose_mode_threshold():
    assert choose_mode(5, 1, 7) == "CodedCaching"
    assert choose_mode(2, 1, 7) == "Unicast"
    assert choose_mode(3, 1, 6) == "CodedCaching"   # boundary counts as worthwhile
    assert choose_mode(Fraction(5, 2), 1, 6) == "Unicast"


# ---- sigma statistics ----

def test_sigma_examples():
    assert sigma((5, 5, 5, 5, 5, 5)) == 0.0
    assert sigma((10, 10, 10, 0, 0, 0)) == 5.0
    assert math.isclose(sigma((6, 6, 5, 5, 4, 4)), math.sqrt(2 / 3))
    with pytest.raises(ConfigError):
        sigma(())


def test_sigma_bin_half_up():
    assert sigma_bin((5, 5, 5, 5, 5, 5)) == 0
    assert sigma_bin((10, 10, 10, 0, 0, 0)) == 5
    assert sigma_bin((6, 6, 5, 5, 4, 4)) == 1          # sigma ~ 0.816
    assert sigma_bin((9, 7, 8, 8, 8, 8)) == Fraction(1, 2)
    # variance exactly 1/16 means sigma = 0.25: half-up lands on the 0.5 bin
    assert sigma_bin((1, 1, 1, 2)) == Fraction(1, 2)   # var 3/16 > 1/16, bin 0.5
    assert sigma_bin((2, 2, 1, 1)) == Fraction(1, 2)


def test_partition_enumeration_and_weights():
    parts = list(_partitions_at_most(4, 3))
    assert parts == [(4,), (3, 1), (2, 2), (2, 1, 1)]
    weights = {p: _association_count(4, 3, p) for p in parts}
    assert weights == {(4,): 3, (3, 1): 24, (2, 2): 18, (2, 1, 1): 36}
    assert sum(weights.values()) == 3 ** 4


def test_sigma_experiment_sampled_counts_and_determinism():
    cfg = config_from_eta(3, 1, 4, 4, 6, (2, 2, 2))
    rows1, meta1 = sigma_experiment(cfg, samples=60, seed=9)
    rows2, _ = sigma_experiment(cfg, samples=60, seed=9)
    assert rows1 == rows2
    assert sum(r.n_samples for r in rows1) == 60
    assert [r.sigma_bin for r in rows1] == sorted(r.sigma_bin for r in rows1)
    assert meta1["samples"] == 60 and meta1["seed"] == 9
    assert all(r.unicast_baseline == cfg.alpha for r in rows1)


def test_sigma_experiment_exhaustive_matches_brute_force():
    cfg = config_from_eta(3, 1, 2, 2, 4, (2, 1, 1))
    rows, meta = sigma_experiment(cfg, exhaustive=True)
    assert meta["samples"] == 3 ** 4

    # direct enumeration of all P^K associations, no partition shortcuts
    brute = {}
    for assignment in range(3 ** 4):
        digits, x = [], assignment
        for _ in range(4):
            digits.append(x % 3 + 1)
            x //= 3
        assoc = {u: digits[u - 1] for u in (1, 2, 3, 4)}
        case = NetworkConfig(P=3, tbar=1, alpha=2, L=2, N=4, association=assoc)
        b = sigma_bin(case.eta_vector())
        n, total = brute.get(b, (0, Fraction(0)))
        brute[b] = (n + 1, total + dof_sweep(case).dof_max)
    assert len(rows) == len(brute)
    for row in rows:
        n, total = brute[row.sigma_bin]
        assert row.n_samples == n
        assert row.dof_m == total / n


def test_dof_max_depends_only_on_sorted_counts():
    a = config_from_eta(3, 1, 4, 4, 6, (3, 1, 2))
    b = config_from_eta(3, 1, 4, 4, 6, (1, 2, 3))
    assert dof_sweep(a).dof_max == dof_sweep(b).dof_max
