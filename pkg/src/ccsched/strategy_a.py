"""Strategy A scheduler: cyclic row elevation of each profile's served users
and coded transmissions indexed by (r, c, l) triples, where r picks the lead
profile rank, c the row, and l the companion-profile family.

All profile indices here are ranks in the relabeled (descending-delta) space of
a ServedPartition; emitted codewords carry original profile ids and user ids.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import ConfigError, binom, ksubsets, mod1
from .placement import MiniFileId, SubpacketId
from .schedule import Codeword, Transmission


@dataclass(frozen=True)
class ElevatedProfile:
    """eta_hat rows of users drawn cyclically from one profile's served list.

    Rows 1..phi are the beta-wide cyclic windows (or the whole list when it is
    no longer than beta); rows phi+1..eta_hat are empty.
    """
    rows: tuple
    phi: int


def elevate_profile(V_p, beta, eta_hat) -> ElevatedProfile:
    V_p = tuple(V_p)
    delta = len(V_p)
    if delta > eta_hat:
        raise ConfigError("ELEVATE_RANGE", f"profile holds {delta} users, more than eta_hat={eta_hat}")
    if beta < 1:
        raise ConfigError("BETA_RANGE", f"beta must be positive, got {beta}")
    phi = max(beta, delta)
    rows = []
    for j in range(1, eta_hat + 1):
        if j > phi:
            rows.append(())
        elif delta <= beta:
            rows.append(V_p)
        else:
            rows.append(tuple(V_p[mod1(i + j - 1, delta) - 1] for i in range(1, beta + 1)))
    return ElevatedProfile(rows=tuple(rows), phi=phi)


def profile_families(r, P, Q) -> list:
    """The ordered (Q-1)-subsets of ranks above r; the l-th one completes the
    transmission's profile set for lead rank r."""
    if not (1 <= r <= P - Q + 1):
        raise ConfigError("FAMILY_RANGE", f"r={r} outside [1..{P - Q + 1}]")
    return ksubsets(range(r + 1, P + 1), Q - 1)


def served_set(elevated, r, c, l, P, Q):
    """The user multiset a triple addresses: row c of the lead profile followed
    by row c of each companion. Returns None when the lead profile is empty
    (the triple is skipped)."""
    fams = profile_families(r, P, Q)
    if not (1 <= c <= elevated[r - 1].phi):
        raise ConfigError("TRIPLE_RANGE", f"c={c} outside [1..{elevated[r - 1].phi}]")
    if not (1 <= l <= len(fams)):
        raise ConfigError("TRIPLE_RANGE", f"l={l} outside [1..{len(fams)}]")
    if not elevated[r - 1].rows[0]:
        return None
    members = []
    for p in (r,) + fams[l - 1]:
        members.extend(elevated[p - 1].rows[c - 1])
    return tuple(members)


def build_transmission_a(cfg, params, partition, elevated, triple, demands, qctr) -> Transmission:
    """Emit the codewords of one triple: for every tbar-subset of the active
    profiles, every user in the remaining rows gets the next subpacket of its
    demanded mini-file, nulled against the other users of its group."""
    r, c, l = triple
    ranks = (r,) + profile_families(r, cfg.P, params.Q)[l - 1]
    codewords = []
    for lam in ksubsets(ranks, cfg.tbar):
        group, seen = [], set()
        for p in ranks:
            if p in lam:
                continue
            for k in elevated[p - 1].rows[c - 1]:
                if k not in seen:
                    seen.add(k)
                    group.append(k)
        if not group:
            continue
        profiles = partition.original_profiles(lam)
        for k in group:
            nullset = frozenset(seen - {k})
            if len(nullset) > cfg.alpha - 1:
                raise ConfigError(
                    "NULLSET_OVERFLOW",
                    f"null set of size {len(nullset)} exceeds alpha-1={cfg.alpha - 1} in triple {triple}")
            q = qctr[k, profiles] = qctr.get((k, profiles), 0) + 1
            codewords.append(Codeword(k, SubpacketId(MiniFileId(demands[k], profiles), q), nullset))
    return Transmission(id=triple, codewords=tuple(codewords))


def schedule_a(cfg, params, partition, demands, qctr=None) -> tuple:
    """All non-skipped transmissions in lexicographic (r, c, l) order."""
    qctr = {} if qctr is None else qctr
    elevated = [elevate_profile(V, params.beta, params.eta_hat) for V in partition.V]
    out = []
    for r in range(1, cfg.P - params.Q + 2):
        if partition.delta[r - 1] == 0:
            continue
        n_families = binom(cfg.P - r, params.Q - 1)
        for c in range(1, elevated[r - 1].phi + 1):
            for l in range(1, n_families + 1):
                out.append(build_transmission_a(cfg, params, partition, elevated, (r, c, l), demands, qctr))
    return tuple(out)
