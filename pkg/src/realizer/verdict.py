"""Three-valued outcomes shared by membership, V-code and realizability checks."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

REALIZED = "realized"
REFUTED = "refuted"
UNKNOWN = "unknown"

# Reasons an Unknown can carry.
FUEL = "fuel"
UNBOUNDED = "unbounded-branch"
SAMPLING = "implication-sampling"


@dataclass(frozen=True)
class Verdict:
    status: str
    reason: Optional[str] = None
    # Set when the verdict only holds relative to a caller-supplied tree universe.
    relative: bool = False

    @property
    def realized(self) -> bool:
        return self.status == REALIZED

    @property
    def refuted(self) -> bool:
        return self.status == REFUTED

    @property
    def unknown(self) -> bool:
        return self.status == UNKNOWN

    @property
    def definite(self) -> bool:
        return self.status != UNKNOWN

    def __str__(self):
        out = {REALIZED: "Realized", REFUTED: "Refuted", UNKNOWN: "Unknown"}[self.status]
        if self.reason:
            out += f"({self.reason})"
        if self.relative:
            out += " [universe-relative]"
        return out


Realized = Verdict(REALIZED)


def Refuted(why: Optional[str] = None) -> Verdict:
    return Verdict(REFUTED, why)


def Unknown(reason: str) -> Verdict:
    return Verdict(UNKNOWN, reason)


def conj(verdicts: Iterable[Verdict]) -> Verdict:
    """All must hold.  Stops at the first refutation; otherwise keeps the first Unknown."""
    pending = None
    relative = False
    for v in verdicts:
        if v.refuted:
            return v
        if v.unknown and pending is None:
            pending = v
        relative = relative or v.relative
    if pending is not None:
        return pending
    return Verdict(REALIZED, relative=relative)


def disj(verdicts: Iterable[Verdict]) -> Verdict:
    """Some must hold.  Stops at the first success; otherwise keeps the first Unknown."""
    pending = None
    last = None
    for v in verdicts:
        if v.realized:
            return v
        if v.unknown and pending is None:
            pending = v
        last = v
    if pending is not None:
        return pending
    return last if last is not None else Refuted("no candidates")
