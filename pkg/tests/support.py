"""Shared fixtures for the test suite: the hand-checked reference network from
the worked delivery examples, plus a deterministic random-config generator for
campaign-style tests."""

import math
import random

from ccsched import DeliveryParams, NetworkConfig, sweep_params, validate

# Twelve users on three profiles, eta = (5, 4, 3); the worked examples run both
# strategies on this association with eta_hat = 4.
REF_ASSOCIATION = {1: 1, 2: 1, 3: 1, 4: 1, 5: 1,
                   6: 2, 7: 2, 8: 2, 9: 2,
                   10: 3, 11: 3, 12: 3}


def ref_cfg(N=12):
    return NetworkConfig(P=3, tbar=1, alpha=6, L=6, N=N, association=dict(REF_ASSOCIATION))


def ref_params_a():
    return validate(ref_cfg(), DeliveryParams(eta_hat=4, Q=3, beta=3, strategy="A"))


def ref_params_b():
    return validate(ref_cfg(), DeliveryParams(eta_hat=4, Q=3, beta=4, strategy="B"))


def random_config(rng: random.Random, max_users=30, max_alpha=8) -> NetworkConfig:
    """A random small network: P in [3..6], tbar coprime with P, alpha in
    [1..max_alpha], users placed on profiles uniformly (empty profiles allowed)."""
    P = rng.randint(3, 6)
    tbar = rng.choice([t for t in (1, 2) if t < P and math.gcd(t, P) == 1])
    alpha = rng.randint(1, max_alpha)
    K = rng.randint(P, max_users)
    N = rng.randint(max(1, K - 3), K + 3)
    association = {k: rng.randint(1, P) for k in range(1, K + 1)}
    return NetworkConfig(P=P, tbar=tbar, alpha=alpha, L=alpha, N=N, association=association)


def feasible_rows(cfg, eta_hat):
    """The sweep menu for one eta_hat, restricted to rows with Q <= P."""
    return [p for p in sweep_params(cfg, eta_hat) if p.Q <= cfg.P]
