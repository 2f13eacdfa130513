"""Configuration types and the combinatorial kit shared by every other module:
validated network and delivery parameters, the 1-indexed cyclic index, ordered
k-subset enumeration, binomial coefficients, and exact rational arithmetic.

Sizes are desk scale by design: at most 16 caching profiles and 256 users.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations

# Exact rationals for every DoF quantity; floats appear only at output edges.
Rational = Fraction

MAX_PROFILES = 16
MAX_USERS = 256

STRATEGY_A = "A"
STRATEGY_B = "B"


class ConfigError(ValueError):
    """Validation failure carrying a stable machine-readable code."""

    def __init__(self, code, message):
        super().__init__(message)
        self.code = code

    def __str__(self):
        return f"{self.code}: {super().__str__()}"


# ---- elementary combinatorics ----

def mod1(x: int, c: int) -> int:
    """Cyclic index into [1..c]: mod1(c, c) = c and mod1(d + c, c) = mod1(d, c)."""
    if x <= 0 or c <= 0:
        raise ConfigError("MOD1_DOMAIN", f"mod1 needs positive arguments, got ({x}, {c})")
    return (x - 1) % c + 1


def binom(n: int, k: int) -> int:
    """C(n, k); zero outside 0 <= k <= n so degenerate ranges vanish cleanly."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def ksubsets(ground, k: int) -> list:
    """All k-subsets of an ordered ground list as tuples, lexicographic by
    ground position, so 1-indexed access picks the l-th subset deterministically.
    """
    ground = tuple(ground)
    if len(set(ground)) != len(ground):
        raise ConfigError("KSUBSETS_GROUND", "ground elements must be distinct")
    if k < 0 or k > len(ground):
        raise ConfigError("KSUBSETS_RANGE", f"k={k} outside [0..{len(ground)}]")
    return list(combinations(ground, k))


# ---- network configuration ----

@dataclass(frozen=True)
class NetworkConfig:
    """Global parameters plus the user-to-profile association.

    P: caching profile count; tbar: cache parameter (coprime with P, 0<tbar<P,
    cache ratio gamma = tbar/P); alpha: spatial multiplexing gain; L: transmit
    antennas (alpha <= L); N: library size; association: user id -> profile
    index in [1..P].
    """

    P: int
    tbar: int
    alpha: int
    L: int
    N: int
    association: dict

    def __post_init__(self):
        if not (2 <= self.P <= MAX_PROFILES):
            raise ConfigError("P_RANGE", f"P must be in [2..{MAX_PROFILES}], got {self.P}")
        if not (0 < self.tbar < self.P):
            raise ConfigError("TBAR_RANGE", f"tbar must satisfy 0 < tbar < P, got {self.tbar}")
        if math.gcd(self.tbar, self.P) != 1:
            raise ConfigError("TBAR_NOT_COPRIME", f"gcd(tbar={self.tbar}, P={self.P}) must be 1")
        if self.alpha < 1:
            raise ConfigError("ALPHA_RANGE", f"alpha must be positive, got {self.alpha}")
        if self.alpha > self.L:
            raise ConfigError("ALPHA_EXCEEDS_ANTENNAS", f"alpha={self.alpha} exceeds L={self.L}")
        if self.N < 1:
            raise ConfigError("N_RANGE", f"N must be positive, got {self.N}")
        assoc = {}
        for user, profile in dict(self.association).items():
            user, profile = int(user), int(profile)
            if user < 1:
                raise ConfigError("ASSOCIATION_RANGE", f"user ids must be positive, got {user}")
            if not (1 <= profile <= self.P):
                raise ConfigError("ASSOCIATION_RANGE", f"user {user} maps to profile {profile} outside [1..{self.P}]")
            assoc[user] = profile
        if not assoc:
            raise ConfigError("ASSOCIATION_EMPTY", "association must contain at least one user")
        if len(assoc) > MAX_USERS:
            raise ConfigError("K_RANGE", f"at most {MAX_USERS} users supported, got {len(assoc)}")
        object.__setattr__(self, "association", assoc)

    @property
    def K(self) -> int:
        return len(self.association)

    @property
    def gamma(self) -> Rational:
        return Fraction(self.tbar, self.P)

    def users_of(self, profile: int) -> tuple:
        """User ids of one profile, ascending."""
        return tuple(sorted(u for u, p in self.association.items() if p == profile))

    def eta(self, profile: int) -> int:
        return sum(1 for p in self.association.values() if p == profile)

    def eta_vector(self) -> tuple:
        """Per-profile user counts (eta_1..eta_P), indexed by original profile id."""
        counts = [0] * self.P
        for p in self.association.values():
            counts[p - 1] += 1
        return tuple(counts)

    def max_eta(self) -> int:
        return max(self.eta_vector())


def config_from_eta(P, tbar, alpha, L, N, eta) -> NetworkConfig:
    """Build a config from a per-profile count vector, numbering users 1..K in
    profile blocks (profile 1 gets the lowest ids)."""
    eta = list(eta)
    if len(eta) != P:
        raise ConfigError("ETA_VECTOR_LENGTH", f"eta vector must have P={P} entries, got {len(eta)}")
    if any(e < 0 for e in eta):
        raise ConfigError("ETA_VECTOR_RANGE", "eta entries must be nonnegative")
    association = {}
    user = 1
    for p, count in enumerate(eta, start=1):
        for _ in range(count):
            association[user] = p
            user += 1
    return NetworkConfig(P=P, tbar=tbar, alpha=alpha, L=L, N=N, association=association)


# ---- delivery parameters ----

@dataclass(frozen=True)
class DeliveryParams:
    """Delivery-phase knobs: per-profile service cap eta_hat, profiles per
    transmission Q, users per profile per transmission beta, and the strategy
    selector. theta/nu1/nu2 are derived by validate()."""

    eta_hat: int
    Q: int
    beta: int
    strategy: str
    theta: int = 0
    nu1: int = 0
    nu2: int = 0


def validate(cfg: NetworkConfig, params: DeliveryParams) -> DeliveryParams:
    """Check params against the config and the realized per-profile counts;
    return a copy with theta/nu1/nu2 filled in.

    Accepted envelope: beta <= min(alpha, eta_hat), eta_hat <= max_p eta_p,
    tbar+1 <= Q <= P, and per strategy:
      A: Q <= tbar + floor(alpha/beta), so every null set fits in alpha-1 dims;
      B: alpha > eta_hat with alpha/eta_hat non-integer, beta = eta_hat, and
         Q = tbar + ceil(alpha/eta_hat) exactly.
    """
    if params.strategy not in (STRATEGY_A, STRATEGY_B):
        raise ConfigError("STRATEGY", f"strategy must be A or B, got {params.strategy!r}")
    if params.eta_hat < 1:
        raise ConfigError("ETA_HAT_RANGE", f"eta_hat must be positive, got {params.eta_hat}")
    if params.eta_hat > cfg.max_eta():
        raise ConfigError(
            "ETA_HAT_EXCEEDS_MAX",
            f"eta_hat={params.eta_hat} exceeds the largest profile size {cfg.max_eta()}")
    if params.beta < 1:
        raise ConfigError("BETA_RANGE", f"beta must be positive, got {params.beta}")
    if params.beta > min(cfg.alpha, params.eta_hat):
        raise ConfigError(
            "BETA_EXCEEDS_MIN",
            f"beta={params.beta} exceeds min(alpha, eta_hat)={min(cfg.alpha, params.eta_hat)}")
    if params.Q < cfg.tbar + 1:
        raise ConfigError("Q_BELOW_MIN", f"Q={params.Q} below tbar+1={cfg.tbar + 1}")
    if params.Q > cfg.P:
        raise ConfigError("Q_EXCEEDS_P", f"Q={params.Q} exceeds P={cfg.P}")
    if params.strategy == STRATEGY_A:
        q_max = cfg.tbar + cfg.alpha // params.beta
        if params.Q > q_max:
            raise ConfigError("Q_ABOVE_MAX", f"Q={params.Q} above tbar+floor(alpha/beta)={q_max}")
        theta = 0
    else:
        if cfg.alpha <= params.eta_hat or cfg.alpha % params.eta_hat == 0:
            raise ConfigError(
                "B_REGIME",
                "strategy B needs alpha > eta_hat with alpha/eta_hat non-integer, "
                f"got alpha={cfg.alpha}, eta_hat={params.eta_hat}")
        if params.beta != params.eta_hat:
            raise ConfigError("B_BETA", f"strategy B requires beta = eta_hat, got beta={params.beta}")
        q_exact = cfg.tbar + -(-cfg.alpha // params.eta_hat)
        if params.Q != q_exact:
            raise ConfigError("B_Q", f"strategy B requires Q = tbar+ceil(alpha/eta_hat) = {q_exact}, got {params.Q}")
        theta = cfg.alpha - params.eta_hat * (cfg.alpha // params.eta_hat)
    nu1 = binom(params.Q - 2, params.Q - cfg.tbar - 2)
    nu2 = binom(params.Q - 1, params.Q - cfg.tbar - 1)
    return replace(params, theta=theta, nu1=nu1, nu2=nu2)
