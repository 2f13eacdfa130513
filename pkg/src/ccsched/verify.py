"""Independent decodability and feasibility checks over any produced Schedule.

The checks recompute expected coverage straight from the cache placement and
count deliveries off the raw transmission list; none of the schedulers' set
construction is reused, so a construction bug cannot validate itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .core import STRATEGY_A
from .placement import MiniFileId, SubpacketId, subpackets_per_minifile


@dataclass
class VerificationReport:
    """Outcome of one check; `passed` summarizes, the lists carry the evidence."""
    passed: bool = True
    received: dict = field(default_factory=dict)   # user -> set of SubpacketId
    duplicates: list = field(default_factory=list)  # (user, SubpacketId) delivered twice or already cached
    missing: list = field(default_factory=list)     # (user, SubpacketId) never delivered
    foreign: list = field(default_factory=list)     # (user, SubpacketId) outside the user's missing set
    max_nullset: int = 0
    nullset_violations: list = field(default_factory=list)   # (transmission id, user, size)
    profile_overflow: list = field(default_factory=list)     # (transmission id, profile, count)
    load_violations: list = field(default_factory=list)      # (round/transmission id, detail)

    def summary(self) -> str:
        if self.passed:
            return "PASS"
        parts = []
        for name in ("duplicates", "missing", "foreign", "nullset_violations",
                     "profile_overflow", "load_violations"):
            items = getattr(self, name)
            if items:
                parts.append(f"{name}={len(items)} (first: {items[0]})")
        return "FAIL " + "; ".join(parts)


def _deliveries(schedule):
    """Flat (user, SubpacketId) stream across the coded and unicast parts."""
    for t in schedule.cc:
        for cw in t.codewords:
            yield cw.recipient, cw.subpacket
    for r in schedule.uc:
        yield from r.entries


def check_coverage(schedule, cfg, params, demands) -> VerificationReport:
    """Every user must end with cache + deliveries = the demanded file's full
    subpacket set: nothing missing, nothing duplicated, nothing already cached
    or belonging to another file."""
    spmf = subpackets_per_minifile(cfg, params)
    expected = {}
    for user, profile in cfg.association.items():
        want = set()
        for ps in combinations(range(1, cfg.P + 1), cfg.tbar):
            if profile in ps:
                continue
            mini = MiniFileId(demands[user], ps)
            want.update(SubpacketId(mini, q) for q in range(1, spmf + 1))
        expected[user] = want

    report = VerificationReport()
    received = {user: set() for user in cfg.association}
    for user, sub in _deliveries(schedule):
        if user not in received:
            report.foreign.append((user, sub))
            continue
        if sub in received[user] or sub not in expected[user]:
            (report.duplicates if sub in received[user] else report.foreign).append((user, sub))
            continue
        received[user].add(sub)
    for user in sorted(cfg.association):
        for sub in sorted(expected[user] - received[user]):
            report.missing.append((user, sub))
    report.received = received
    report.passed = not (report.duplicates or report.missing or report.foreign)
    return report


def check_zf_feasibility(schedule, cfg, params) -> VerificationReport:
    """Interference-dimension checks: every null set fits in alpha-1 dims, no
    transmission serves more than beta users of one profile, per-transmission
    totals respect the strategy's bound, and unicast rounds respect alpha."""
    report = VerificationReport()
    alpha, beta = cfg.alpha, params.beta
    users = set(cfg.association)
    if params.strategy == STRATEGY_A:
        total_cap = params.Q * beta
    else:
        total_cap = params.eta_hat * cfg.tbar + alpha
    for t in schedule.cc:
        recipients = set()
        for cw in t.codewords:
            size = len(cw.nullset)
            report.max_nullset = max(report.max_nullset, size)
            if size > alpha - 1:
                report.nullset_violations.append((t.id, cw.recipient, size))
            if cw.recipient not in users or not set(cw.nullset) <= users:
                report.load_violations.append((t.id, f"non-user id around recipient {cw.recipient}"))
            recipients.add(cw.recipient)
        per_profile = {}
        for k in recipients:
            p = cfg.association.get(k)
            per_profile[p] = per_profile.get(p, 0) + 1
        for p, count in sorted(per_profile.items(), key=lambda kv: (kv[0] or 0)):
            if count > beta:
                report.profile_overflow.append((t.id, p, count))
        if len(recipients) > total_cap:
            report.load_violations.append((t.id, f"{len(recipients)} recipients exceed cap {total_cap}"))
        if not recipients:
            report.load_violations.append((t.id, "transmission serves nobody"))
    for i, rnd in enumerate(schedule.uc, start=1):
        recipients = [k for k, _ in rnd.entries]
        if len(rnd.entries) > alpha:
            report.load_violations.append((("uc", i), f"{len(rnd.entries)} entries exceed alpha={alpha}"))
        if len(set(recipients)) != len(recipients):
            report.load_violations.append((("uc", i), "repeated recipient in one round"))
        if not set(recipients) <= users:
            report.load_violations.append((("uc", i), "non-user recipient"))
    report.passed = not (report.nullset_violations or report.profile_overflow or report.load_violations)
    return report
