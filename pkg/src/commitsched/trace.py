"""Canonical event trace.

One line per event: ``t=<tick> <Kind> <subject>[ key=value...]`` with the
attribute order fixed by the emitting code, and a final sentinel line
``t=<tick> END ok=<true|false>`` where ok means the run saw no
responsibility violation. Identical runs serialize byte-identically;
the monitoring panel is a pure projection of this text.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class EventKind(Enum):
    REGISTERED = "Registered"
    REJECTED = "Rejected"
    ASSIGNED = "Assigned"
    SUBMITTED = "Submitted"
    ACTIVATED = "Activated"
    WAITING = "Waiting"
    COMPLETED = "Completed"
    FAILED = "Failed"
    VIOLATION = "Violation"
    SNAPSHOT = "Snapshot"
    SIGNEDOFF = "SignedOff"


@dataclass(frozen=True)
class ScheduleEvent:
    """One timestamped trace line."""

    clock: int
    kind: EventKind
    subject: str
    attrs: tuple[tuple[str, str], ...] = ()

    def line(self) -> str:
        parts = [f"t={self.clock}", self.kind.value, self.subject]
        parts.extend(f"{k}={v}" for k, v in self.attrs)
        return " ".join(parts)


@dataclass(frozen=True)
class Trace:
    """Ordered events of one run plus the closing sentinel."""

    events: tuple[ScheduleEvent, ...]
    final_clock: int

    @property
    def ok(self) -> bool:
        return all(e.kind is not EventKind.VIOLATION for e in self.events)

    def lines(self) -> list[str]:
        out = [e.line() for e in self.events]
        out.append(f"t={self.final_clock} END ok={'true' if self.ok else 'false'}")
        return out

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"


# Lifecycle moves implied by each event kind, used to rebuild the
# monitoring counts from a trace prefix.
_STATE_FOR_KIND = {
    EventKind.ACTIVATED: "Active",
    EventKind.WAITING: "Waiting",
    EventKind.COMPLETED: "Completed",
    EventKind.FAILED: "Failed",
    EventKind.VIOLATION: "Violated",
}


def replay_counts(events) -> dict[str, dict[str, int]]:
    """Fold lifecycle events into per-service state counts.

    Tracks each commitment's latest state from Activated / Waiting /
    Completed / Failed / Violation events; other kinds do not touch the
    lifecycle. The result matches what a Snapshot taken after the last
    event reports.
    """
    latest: dict[str, tuple[str, str]] = {}  # cid -> (service, state)
    for e in events:
        state = _STATE_FOR_KIND.get(e.kind)
        if state is None:
            continue
        service = dict(e.attrs).get("service", "")
        latest[e.subject] = (service, state)
    counts: dict[str, dict[str, int]] = {}
    for service, state in latest.values():
        per = counts.setdefault(service, {})
        per[state] = per.get(state, 0) + 1
    return counts
