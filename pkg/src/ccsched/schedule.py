"""Schedule containers shared by the schedulers, the unicast step, the verifier
and the DoF accounting. A Schedule is pure data; its tallies are derived.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Codeword:
    """One symbolic delivery inside a transmission: a recipient, its subpacket,
    and the co-served users its precoder must null out."""
    recipient: int
    subpacket: tuple  # SubpacketId
    nullset: frozenset


@dataclass(frozen=True)
class Transmission:
    """One coded broadcast, identified by its (r,c,l) triple or (r,c,l,m,s)
    quintuple."""
    id: tuple
    codewords: tuple

    def recipients(self) -> set:
        return {cw.recipient for cw in self.codewords}


@dataclass(frozen=True)
class UcRound:
    """One unicast round: up to alpha (recipient, subpacket) pairs."""
    entries: tuple


@dataclass(frozen=True)
class Schedule:
    """Ordered coded transmissions plus unicast rounds."""
    cc: tuple
    uc: tuple

    @property
    def T_M(self) -> int:
        return len(self.cc)

    @property
    def J_M(self) -> int:
        # distinct recipients per transmission, summed
        return sum(len(t.recipients()) for t in self.cc)

    @property
    def T_U(self) -> int:
        return len(self.uc)

    @property
    def J_U(self) -> int:
        return sum(len(r.entries) for r in self.uc)
