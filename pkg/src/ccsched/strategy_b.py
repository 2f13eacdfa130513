"""Strategy B scheduler: profiles padded with phantom slots to a common height,
a theta-wide sliding window over the lead profile, slot patterns that stagger
window users across the nu2 codeword groups, and transmissions indexed by
(r, c, l, m, s) quintuples.

Profile indices are ranks in the relabeled (descending-delta) space; phantoms
are represented as None and never reach a codeword. Emitted codewords carry
original profile ids.
"""

from __future__ import annotations

from .core import ConfigError, ksubsets, mod1
from .placement import MiniFileId, SubpacketId
from .schedule import Codeword, Transmission

PHANTOM = None


def pad_profile(V_r, eta_hat) -> tuple:
    """The profile's served users followed by phantoms up to length eta_hat."""
    V_r = tuple(V_r)
    if len(V_r) > eta_hat:
        raise ConfigError("PAD_RANGE", f"profile holds {len(V_r)} users, more than eta_hat={eta_hat}")
    return V_r + (PHANTOM,) * (eta_hat - len(V_r))


def head_window(Y_r, m, theta) -> tuple:
    """theta consecutive slots of the padded profile, read cyclically starting
    at position m."""
    eta_hat = len(Y_r)
    if not (1 <= m <= eta_hat):
        raise ConfigError("WINDOW_RANGE", f"m={m} outside [1..{eta_hat}]")
    if theta < 1:
        raise ConfigError("WINDOW_RANGE", f"theta must be positive, got {theta}")
    return tuple(Y_r[mod1(i + m, eta_hat) - 1] for i in range(theta))


def slot_pattern(u, nu1, nu2, s) -> tuple:
    """Length-nu2 slot list: nu1 copies of u then phantoms, circularly shifted
    by s. Position n is real in exactly nu1 of the nu2 shifts."""
    if not (1 <= nu1 <= nu2):
        raise ConfigError("PATTERN_RANGE", f"need 1 <= nu1 <= nu2, got nu1={nu1}, nu2={nu2}")
    if not (1 <= s <= nu2):
        raise ConfigError("PATTERN_RANGE", f"s={s} outside [1..{nu2}]")
    base = (u,) * nu1 + (PHANTOM,) * (nu2 - nu1)
    return tuple(base[mod1(n - 1 + s, nu2) - 1] for n in range(1, nu2 + 1))


def companion_profiles(P, Q, r, c, l):
    """Companion profile set for a quintuple: ranks other than r keep their
    (descending-delta) order; the c-th is the pivot and the l-th (Q-2)-subset
    of the ranks after it completes the set B of size Q-1."""
    if not (1 <= r <= P):
        raise ConfigError("QUINTUPLE_RANGE", f"r={r} outside [1..{P}]")
    if not (1 <= c <= P - Q + 1):
        raise ConfigError("QUINTUPLE_RANGE", f"c={c} outside [1..{P - Q + 1}]")
    others = [p for p in range(1, P + 1) if p != r]
    pivot = others[c - 1]
    families = ksubsets(others[c:], Q - 2)
    if not (1 <= l <= len(families)):
        raise ConfigError("QUINTUPLE_RANGE", f"l={l} outside [1..{len(families)}]")
    fam = families[l - 1]
    return (pivot,) + fam, fam


def build_transmission_b(cfg, params, partition, padded, quintuple, demands, qctr):
    """Emit one quintuple's codewords, or None when it is skipped (all-phantom
    window and an empty pivot profile, which means nobody would be served).

    Group n serves the window's real users when the shifted pattern is real at
    position n, plus every served user of the profiles removed from B to form
    that group's mini-file index; null sets span the window and those profiles.
    """
    r, c, l, m, s = quintuple
    B, _ = companion_profiles(cfg.P, params.Q, r, c, l)
    window = head_window(padded[r - 1], m, params.theta)
    real_window = [u for u in window if u is not PHANTOM]
    if not real_window and partition.delta[B[0] - 1] == 0:
        return None
    share = cfg.alpha // params.eta_hat
    C_list = ksubsets(B, share)
    if len(C_list) != params.nu2:
        raise ConfigError("PATTERN_RANGE", f"expected nu2={params.nu2} subsets, got {len(C_list)}")
    patterns = [slot_pattern(u, params.nu1, params.nu2, s) for u in window]
    codewords = []
    for n in range(1, params.nu2 + 1):
        removed = C_list[n - 1]
        recipients = [pat[n - 1] for u, pat in zip(window, patterns)
                      if u is not PHANTOM and pat[n - 1] is not PHANTOM]
        companions = [k for p in removed for k in partition.V[p - 1]]
        recipients.extend(companions)
        if not recipients:
            continue
        theta_set = tuple(p for p in B if p not in removed)
        profiles = partition.original_profiles(theta_set)
        nullbase = set(real_window) | set(companions)
        if len(recipients) != len(set(recipients)):
            raise ConfigError("DUPLICATE_RECIPIENT", f"duplicate recipient in quintuple {quintuple}")
        for k in recipients:
            nullset = frozenset(nullbase - {k})
            if len(nullset) > cfg.alpha - 1:
                raise ConfigError(
                    "NULLSET_OVERFLOW",
                    f"null set of size {len(nullset)} exceeds alpha-1={cfg.alpha - 1} in quintuple {quintuple}")
            q = qctr[k, profiles] = qctr.get((k, profiles), 0) + 1
            codewords.append(Codeword(k, SubpacketId(MiniFileId(demands[k], profiles), q), nullset))
    return Transmission(id=quintuple, codewords=tuple(codewords))


def schedule_b(cfg, params, partition, demands, qctr=None) -> tuple:
    """All non-skipped transmissions in lexicographic (r, c, l, m, s) order."""
    qctr = {} if qctr is None else qctr
    padded = [pad_profile(V, params.eta_hat) for V in partition.V]
    out = []
    for r in range(1, cfg.P + 1):
        for c in range(1, cfg.P - params.Q + 2):
            others = [p for p in range(1, cfg.P + 1) if p != r]
            n_families = len(ksubsets(others[c:], params.Q - 2))
            for l in range(1, n_families + 1):
                for m in range(1, params.eta_hat + 1):
                    for s in range(1, params.nu2 + 1):
                        t = build_transmission_b(cfg, params, partition, padded,
                                                 (r, c, l, m, s), demands, qctr)
                        if t is not None:
                            out.append(t)
    return tuple(out)
