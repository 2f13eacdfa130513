"""Greedy unicast rounds for users the coded step excluded: repeatedly sort by
remaining missing count and serve one subpacket to each of the first
min(alpha, still-missing) users.
"""

from __future__ import annotations

from collections import deque

from .schedule import UcRound


def schedule_uc(missing, alpha) -> tuple:
    """missing: user id -> ordered list of SubpacketId still to deliver.
    Ties in the remaining-count sort break by ascending user id."""
    pending = {k: deque(subs) for k, subs in sorted(missing.items()) if subs}
    rounds = []
    while pending:
        order = sorted(pending, key=lambda k: (-len(pending[k]), k))
        entries = []
        for k in order[:min(alpha, len(order))]:
            entries.append((k, pending[k].popleft()))
            if not pending[k]:
                del pending[k]
        rounds.append(UcRound(entries=tuple(entries)))
    return tuple(rounds)
