"""Mini-file splitting, per-profile cache contents, and the served/excluded
split that decides who the coded step covers and who falls back to unicast.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .core import ConfigError, NetworkConfig, DeliveryParams, STRATEGY_A, binom, ksubsets


class MiniFileId(NamedTuple):
    """Fragment of one file indexed by the tbar-subset of profiles caching it."""
    file: int
    profiles: tuple


class SubpacketId(NamedTuple):
    """One delivery unit: a mini-file plus its sequence index q."""
    mini: MiniFileId
    q: int


def split_library(cfg: NetworkConfig) -> dict:
    """Per file, the C(P, tbar) mini-file ids, one per tbar-subset of [1..P]."""
    subsets = ksubsets(range(1, cfg.P + 1), cfg.tbar)
    return {n: [MiniFileId(n, ps) for ps in subsets] for n in range(1, cfg.N + 1)}


def profile_cache(cfg: NetworkConfig, p: int) -> set:
    """Cache contents of profile p: every mini-file whose profile set contains p.
    Cardinality N*C(P-1, tbar-1), a gamma fraction of the split library."""
    if not (1 <= p <= cfg.P):
        raise ConfigError("PROFILE_RANGE", f"profile {p} outside [1..{cfg.P}]")
    return {MiniFileId(n, ps)
            for n in range(1, cfg.N + 1)
            for ps in ksubsets(range(1, cfg.P + 1), cfg.tbar)
            if p in ps}


def subpackets_per_minifile(cfg: NetworkConfig, params: DeliveryParams) -> int:
    """How many subpackets each mini-file is split into under the active strategy."""
    P, tbar, Q = cfg.P, cfg.tbar, params.Q
    if params.strategy == STRATEGY_A:
        return params.beta * binom(P - tbar - 1, Q - tbar - 1)
    return (params.eta_hat * tbar + cfg.alpha) * binom(P - tbar - 1, Q - tbar - 1) * binom(Q - 2, Q - tbar - 2)


def missing_subpackets(cfg: NetworkConfig, params: DeliveryParams, user: int, demand: int) -> list:
    """Every subpacket of the demanded file that the user's profile does not
    cache, ordered by (mini-file profile set, q)."""
    own = cfg.association[user]
    spmf = subpackets_per_minifile(cfg, params)
    out = []
    for ps in ksubsets(range(1, cfg.P + 1), cfg.tbar):
        if own in ps:
            continue
        mini = MiniFileId(demand, ps)
        out.extend(SubpacketId(mini, q) for q in range(1, spmf + 1))
    return out


# ---- served/excluded split ----

@dataclass(frozen=True)
class ServedPartition:
    """CC-served users per profile after the eta_hat truncation, with profiles
    relabeled in descending eta_p (ties by ascending original id).

    order[i-1] is the original profile id at rank i; V[i-1]/delta[i-1] are that
    rank's served users (ascending id) and count min(eta_hat, eta_p). excluded
    holds the unicast-served users.
    """

    eta_hat: int
    order: tuple
    V: tuple
    delta: tuple
    excluded: tuple
    K_M: int
    K_U: int

    @property
    def P(self) -> int:
        return len(self.order)

    def original_profiles(self, ranks) -> tuple:
        """Translate a set of rank indices to ascending original profile ids."""
        return tuple(sorted(self.order[r - 1] for r in ranks))


def select_served(cfg: NetworkConfig, eta_hat: int) -> ServedPartition:
    """Keep the first min(eta_hat, eta_p) users of each profile (ascending id)
    for the coded step; the rest are excluded to unicast."""
    if eta_hat < 1:
        raise ConfigError("ETA_HAT_RANGE", f"eta_hat must be positive, got {eta_hat}")
    if eta_hat > cfg.max_eta():
        raise ConfigError(
            "ETA_HAT_EXCEEDS_MAX",
            f"eta_hat={eta_hat} exceeds the largest profile size {cfg.max_eta()}")
    eta = cfg.eta_vector()
    served, excluded = {}, []
    for p in range(1, cfg.P + 1):
        users = cfg.users_of(p)
        served[p] = users[:min(eta_hat, len(users))]
        excluded.extend(users[min(eta_hat, len(users)):])
    order = tuple(sorted(range(1, cfg.P + 1), key=lambda p: (-eta[p - 1], p)))
    V = tuple(served[p] for p in order)
    delta = tuple(len(v) for v in V)
    K_M = sum(delta)
    return ServedPartition(eta_hat=eta_hat, order=order, V=V, delta=delta,
                           excluded=tuple(excluded), K_M=K_M, K_U=cfg.K - K_M)
