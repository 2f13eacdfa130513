"""Exact DoF accounting and parameter search: empirical counts from schedules,
the closed-form counterparts, eta_hat/Q sweeps, optimality and mode-selection
checks, and the association-skew experiment behind the sigma figures.

Every DoF is a Fraction; the only floating-point quantity is sigma itself, and
it is used for grouping and display only.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from concurrent import futures
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from math import factorial, prod

from .core import (ConfigError, DeliveryParams, NetworkConfig, Rational,
                   STRATEGY_A, STRATEGY_B, binom, config_from_eta, mod1, validate)
from .placement import missing_subpackets, select_served, subpackets_per_minifile
from .schedule import Schedule
from .strategy_a import schedule_a
from .strategy_b import schedule_b
from .unicast import schedule_uc
from .verify import check_coverage, check_zf_feasibility


# ---- schedule assembly ----

def default_demands(cfg):
    """Worst-case demand map: user k asks for file mod1(k, N), so demands are
    pairwise distinct up to library wraparound."""
    return {k: mod1(k, cfg.N) for k in sorted(cfg.association)}


def build_schedule(cfg, params, partition=None, demands=None):
    """Coded transmissions for the served users plus greedy unicast rounds for
    the excluded ones, under one shared subpacketization."""
    params = validate(cfg, params)
    if partition is None:
        partition = select_served(cfg, params.eta_hat)
    if demands is None:
        demands = default_demands(cfg)
    builder = schedule_a if params.strategy == STRATEGY_A else schedule_b
    cc = builder(cfg, params, partition, demands)
    missing = {k: missing_subpackets(cfg, params, k, demands[k]) for k in partition.excluded}
    uc = schedule_uc(missing, cfg.alpha)
    return Schedule(cc=cc, uc=uc), partition, demands


# ---- DoF, empirical and closed form ----

@dataclass(frozen=True)
class DofReport:
    J_M: int
    J_U: int
    T_M: int
    T_U: int
    empirical: Rational
    closed_form: Rational | None
    strategy: str | None
    eta_hat: int | None
    Q: int | None
    beta: int | None


def empirical_dof(schedule, params=None) -> DofReport:
    """Count served users and transmissions straight off the schedule."""
    J_M, T_M, J_U, T_U = schedule.J_M, schedule.T_M, schedule.J_U, schedule.T_U
    if T_M + T_U == 0:
        raise ConfigError("EMPTY_SCHEDULE", "no transmissions, DoF undefined")
    return DofReport(
        J_M=J_M, J_U=J_U, T_M=T_M, T_U=T_U,
        empirical=Fraction(J_M + J_U, T_M + T_U), closed_form=None,
        strategy=getattr(params, "strategy", None),
        eta_hat=getattr(params, "eta_hat", None),
        Q=getattr(params, "Q", None), beta=getattr(params, "beta", None))


def _strategy_b_transmission_count(cfg, params, partition):
    """Quintuples actually emitted: all (r,c,l,m,s) except those whose window
    is all-phantom while the pivot profile is empty."""
    P, Q, eta_hat, theta = cfg.P, params.Q, params.eta_hat, params.theta
    total = 0
    for r in range(1, P + 1):
        delta_r = partition.delta[r - 1]
        empty_windows = sum(
            1 for m in range(1, eta_hat + 1)
            if all(mod1(i + m, eta_hat) > delta_r for i in range(theta)))
        others = [p for p in range(1, P + 1) if p != r]
        for c in range(1, P - Q + 2):
            live_m = eta_hat if partition.delta[others[c - 1] - 1] > 0 else eta_hat - empty_windows
            total += binom(P - c - 1, Q - 2) * live_m * params.nu2
    return total


def closed_form_dof(cfg, params, partition) -> Rational:
    """The theorem-style DoF for the given association split, covering both the
    no-excluded-users and the unicast-append branches of either strategy."""
    P, tbar, alpha = cfg.P, cfg.tbar, cfg.alpha
    Q, beta, eta_hat = params.Q, params.beta, params.eta_hat
    K_M, K_U = partition.K_M, partition.K_U
    if params.strategy == STRATEGY_A:
        J_M = K_M * binom(P - 1, Q - 1) * beta
        T_M = sum(max(beta, d) * binom(P - r, Q - 1)
                  for r, d in enumerate(partition.delta[:P - Q + 1], start=1) if d > 0)
    elif params.strategy == STRATEGY_B:
        J_M = K_M * binom(P - 1, Q - 1) * (eta_hat * tbar + alpha) * params.nu2
        T_M = _strategy_b_transmission_count(cfg, params, partition)
    else:
        raise ConfigError("STRATEGY", f"unknown strategy {params.strategy!r}")
    if K_U == 0:
        return Fraction(J_M, T_M)
    J_U = K_U * binom(P - 1, tbar) * subpackets_per_minifile(cfg, params)
    T_U = -(-J_U // min(K_U, alpha))
    return Fraction(J_M + J_U, T_M + T_U)


@dataclass(frozen=True)
class PipelineResult:
    schedule: Schedule
    partition: object
    demands: dict
    report: DofReport
    coverage: object
    zf: object

    @property
    def ok(self):
        return (self.coverage.passed and self.zf.passed
                and self.report.empirical == self.report.closed_form)


def run_pipeline(cfg, params, demands=None) -> PipelineResult:
    """Full chain for one configuration: build, verify both ways, count, and
    attach the closed-form DoF next to the empirical one."""
    params = validate(cfg, params)
    schedule, partition, demands = build_schedule(cfg, params, demands=demands)
    coverage = check_coverage(schedule, cfg, params, demands)
    zf = check_zf_feasibility(schedule, cfg, params)
    base = empirical_dof(schedule, params)
    report = DofReport(
        J_M=base.J_M, J_U=base.J_U, T_M=base.T_M, T_U=base.T_U,
        empirical=base.empirical, closed_form=closed_form_dof(cfg, params, partition),
        strategy=params.strategy, eta_hat=params.eta_hat, Q=params.Q, beta=params.beta)
    return PipelineResult(schedule=schedule, partition=partition, demands=demands,
                          report=report, coverage=coverage, zf=zf)


# ---- sweep over eta_hat and Q ----

@dataclass(frozen=True)
class SweepRow:
    eta_hat: int
    Q: int
    strategy: str
    beta: int
    K_M: int
    K_U: int
    T_M: int | None
    T_U: int | None
    dof: Rational | None
    feasible: bool


@dataclass(frozen=True)
class SweepResult:
    rows: tuple
    best: SweepRow | None

    @property
    def dof_max(self):
        return self.best.dof if self.best else None


def sweep_params(cfg, eta_hat):
    """The delivery options enumerated for one eta_hat: a single (Q=tbar+1,
    beta=alpha) strategy-A row when alpha <= eta_hat; otherwise beta=eta_hat
    strategy-A rows for each Q up to tbar+floor(alpha/eta_hat), plus the single
    strategy-B row when alpha/eta_hat is fractional."""
    alpha, tbar = cfg.alpha, cfg.tbar
    if alpha <= eta_hat:
        return [DeliveryParams(eta_hat, tbar + 1, alpha, STRATEGY_A)]
    rows = [DeliveryParams(eta_hat, Q, eta_hat, STRATEGY_A)
            for Q in range(tbar + 1, tbar + alpha // eta_hat + 1)]
    if alpha % eta_hat:
        rows.append(DeliveryParams(eta_hat, tbar + -(-alpha // eta_hat), eta_hat, STRATEGY_B))
    return rows


def _eval_row(cfg, params) -> SweepRow:
    result = run_pipeline(cfg, params)
    if not (result.coverage.passed and result.zf.passed):
        raise ConfigError("SWEEP_VERIFY_FAIL", f"verification failed for {params}")
    rep = result.report
    if rep.empirical != rep.closed_form:
        raise ConfigError(
            "SWEEP_ORACLE_MISMATCH",
            f"empirical {rep.empirical} != closed form {rep.closed_form} for {params}")
    return SweepRow(eta_hat=params.eta_hat, Q=params.Q, strategy=params.strategy,
                    beta=params.beta, K_M=result.partition.K_M, K_U=result.partition.K_U,
                    T_M=rep.T_M, T_U=rep.T_U, dof=rep.empirical, feasible=True)


def _pool_map(fn, items, threads):
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with futures.ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def dof_sweep(cfg, threads=1) -> SweepResult:
    """Evaluate every enumerated (eta_hat, Q, strategy) option through the full
    pipeline; options whose Q exceeds P are kept as infeasible rows."""
    specs = []
    for eta_hat in range(1, cfg.max_eta() + 1):
        partition = select_served(cfg, eta_hat)
        for params in sweep_params(cfg, eta_hat):
            specs.append((params, partition, params.Q <= cfg.P))
    evaluated = iter(_pool_map(partial(_eval_row, cfg),
                               [p for p, _, feasible in specs if feasible], threads))
    rows = []
    for params, partition, feasible in specs:
        if feasible:
            rows.append(next(evaluated))
        else:
            rows.append(SweepRow(eta_hat=params.eta_hat, Q=params.Q, strategy=params.strategy,
                                 beta=params.beta, K_M=partition.K_M, K_U=partition.K_U,
                                 T_M=None, T_U=None, dof=None, feasible=False))
    best = None
    for row in rows:
        if not row.feasible:
            continue
        if best is None or row.dof > best.dof or (
                row.dof == best.dof and (row.Q, row.eta_hat) < (best.Q, best.eta_hat)):
            best = row
    return SweepResult(rows=tuple(rows), best=best)


# ---- optimality references and mode selection ----

def uniform_optimum(cfg, eta_hat) -> Rational:
    """Best possible DoF for a uniform association with eta_p = eta_hat:
    alpha(P*gamma+1) when alpha <= eta_hat, else K*gamma+alpha."""
    if any(e != eta_hat for e in cfg.eta_vector()):
        raise ConfigError("NOT_UNIFORM", "uniform_optimum needs eta_p = eta_hat for every profile")
    if cfg.alpha <= eta_hat:
        return cfg.alpha * (cfg.P * cfg.gamma + 1)
    return cfg.K * cfg.gamma + cfg.alpha


def dof_loss_uniform(alpha, eta_hat, eta_avg) -> Rational:
    """DoF lost to association skew, alpha(1 - eta_avg/eta_hat), under the
    stated divisibility assumptions."""
    if eta_avg < 1 or alpha % eta_hat or alpha % eta_avg:
        raise ConfigError("DIVISIBILITY", "alpha must be divisible by eta_hat and by eta_avg")
    return alpha * (1 - Fraction(eta_avg, eta_hat))


def choose_mode(eta_avg, tbar, alpha) -> str:
    """Coded caching pays off iff eta_avg*(tbar+1) >= alpha."""
    return "CodedCaching" if Fraction(eta_avg) * (tbar + 1) >= alpha else "Unicast"


# ---- association skew statistics ----

def sigma(eta) -> float:
    """Standard deviation of the per-profile user counts."""
    eta = list(eta)
    if not eta:
        raise ConfigError("SIGMA_EMPTY", "need at least one profile count")
    mean = Fraction(sum(eta), len(eta))
    var = sum((Fraction(e) - mean) ** 2 for e in eta) / len(eta)
    return math.sqrt(var)


def sigma_bin(eta) -> Fraction:
    """sigma rounded half-up to the nearest 0.5, computed exactly from the
    integer variance so binning never depends on float rounding."""
    eta = list(eta)
    mean = Fraction(sum(eta), len(eta))
    var = sum((Fraction(e) - mean) ** 2 for e in eta) / len(eta)
    b = 0
    while var * 16 >= (2 * (b + 1) - 1) ** 2:
        b += 1
    return Fraction(b, 2)


def _dof_max_for_eta(base_cfg, eta):
    cfg = config_from_eta(base_cfg.P, base_cfg.tbar, base_cfg.alpha,
                          base_cfg.L, base_cfg.N, eta)
    return dof_sweep(cfg).dof_max


def _partitions_at_most(total, parts, cap=None):
    """Descending partitions of `total` into at most `parts` parts."""
    cap = total if cap is None else cap
    if total == 0:
        yield ()
        return
    if parts == 0:
        return
    for first in range(min(cap, total), 0, -1):
        for rest in _partitions_at_most(total - first, parts - 1, first):
            yield (first,) + rest


def _association_count(K, P, part):
    """How many of the P^K associations realize this sorted eta partition."""
    padded = list(part) + [0] * (P - len(part))
    orderings = factorial(P) // prod(factorial(c) for c in Counter(padded).values())
    assignments = factorial(K) // prod(factorial(e) for e in padded)
    return orderings * assignments


@dataclass(frozen=True)
class SigmaBinRow:
    sigma_bin: Fraction
    n_samples: int
    dof_m: Rational
    unicast_baseline: int
    uniform_optimum: Rational


def sigma_experiment(cfg, samples=2000, seed=0, exhaustive=False, threads=1):
    """Sample associations of the config's K users into its P profiles
    uniformly at random (or enumerate them all exactly), compute the best
    sweep DoF for each, and average per 0.5-wide sigma bin.

    The best DoF depends only on the sorted profile-count vector, so it is
    evaluated once per distinct partition; with exhaustive=True the partition
    weights are exact association counts instead of sample tallies.
    """
    P, K = cfg.P, cfg.K
    weights = Counter()
    if exhaustive:
        for part in _partitions_at_most(K, P):
            key = tuple(part) + (0,) * (P - len(part))
            weights[key] = _association_count(K, P, part)
    else:
        rng = random.Random(seed)
        for _ in range(samples):
            counts = [0] * P
            for _ in range(K):
                counts[rng.randrange(P)] += 1
            weights[tuple(sorted(counts, reverse=True))] += 1
    keys = sorted(weights)
    dof_by_key = dict(zip(keys, _pool_map(partial(_dof_max_for_eta, cfg), keys, threads)))
    bins = {}
    for key, weight in weights.items():
        bins.setdefault(sigma_bin(key), []).append((weight, dof_by_key[key]))
    eta_avg = Fraction(K, P)
    if cfg.alpha <= eta_avg:
        optimum = cfg.alpha * (P * cfg.gamma + 1)
    else:
        optimum = K * cfg.gamma + cfg.alpha
    rows = []
    for b in sorted(bins):
        entries = bins[b]
        n = sum(w for w, _ in entries)
        mean = sum(w * dof for w, dof in entries) / n
        rows.append(SigmaBinRow(sigma_bin=b, n_samples=n, dof_m=mean,
                                unicast_baseline=cfg.alpha, uniform_optimum=optimum))
    meta = {
        "protocol": "exhaustive enumeration" if exhaustive else "uniform random associations",
        "samples": sum(weights.values()) if exhaustive else samples,
        "seed": None if exhaustive else seed,
        "distinct_partitions": len(keys),
        "binning": "sigma rounded half-up to nearest 0.5",
    }
    return rows, meta
