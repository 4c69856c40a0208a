"""Admission control for commitments.

Design rules:
  - A submitted commitment executes immediately only if it conflicts with
    no active and no already-queued same-scope commitment. Blocking on
    queued conflicts disables barging: a late reader cannot overtake a
    waiting writer, which keeps FCFS fair and starvation-free.
  - Completion (or failure, or a governance violation) releases the
    scope; the queue is then drained greedily with select_next until no
    eligible candidate remains.
  - FCFS serves by arrival; Priority serves by priority, then arrival,
    then lexicographic id. Priority acts only at dequeue time.
  - The scheduler is a single-threaded state machine; callers serialize
    access. Commitments are immutable values, so snapshots are cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import DuplicateId, IllegalState, NonEmptyQueue, UnknownId
from .model import Commitment, LifecycleState, TransitionEvent, transition
from .relations import classify, conflicts, same_scope


class Policy(Enum):
    FCFS = "fcfs"
    PRIORITY = "priority"


class DecisionKind(Enum):
    EXECUTE = "execute"
    WAIT = "wait"


@dataclass(frozen=True)
class Decision:
    """Outcome of one submission: execute now, or wait behind blockers."""

    kind: DecisionKind
    blockers: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind is DecisionKind.WAIT and not self.blockers:
            raise ValueError("a wait decision must name its blockers")
        if self.kind is DecisionKind.EXECUTE and self.blockers:
            raise ValueError("an execute decision has no blockers")


@dataclass(frozen=True)
class MonitoringReport:
    """Commitment counts per service and state, plus the ordered queue."""

    by_service: Mapping[str, Mapping[LifecycleState, int]]
    queue: tuple[str, ...]


def _blocks(c: Commitment, other: Commitment) -> bool:
    return same_scope(c, other) and conflicts(classify(c, other))


def select_next(
    queue: Sequence[Commitment],
    active: Iterable[Commitment],
    policy: Policy,
) -> Commitment | None:
    """Pick the queued commitment to activate next, or None.

    Only commitments that no longer conflict with the active set are
    eligible. FCFS takes the earliest arrival (queue order breaks ties);
    Priority takes the highest priority, then earliest arrival, then
    smallest id.
    """
    actives = list(active)
    eligible = [
        (idx, c) for idx, c in enumerate(queue)
        if not any(_blocks(c, a) for a in actives)
    ]
    if not eligible:
        return None
    if policy is Policy.FCFS:
        return min(eligible, key=lambda e: (e[1].arrival, e[0]))[1]
    return min(eligible, key=lambda e: (-e[1].priority, e[1].arrival, e[1].id))[1]


class Scheduler:
    """Single-threaded commitment admission state machine."""

    def __init__(self, policy: Policy = Policy.FCFS):
        self.policy = policy
        self._active: dict[str, Commitment] = {}   # id -> commitment, activation order
        self._queue: list[Commitment] = []         # waiting, arrival order
        self._clock = 0
        self._seen: set[str] = set()
        self._tally: dict[str, dict[LifecycleState, int]] = {}  # terminal outcomes

    @property
    def active(self) -> Mapping[str, Commitment]:
        return MappingProxyType(self._active)

    @property
    def queue(self) -> tuple[Commitment, ...]:
        return tuple(self._queue)

    @property
    def clock(self) -> int:
        return self._clock

    def submit(self, c: Commitment) -> Decision:
        """Admit a pending commitment: activate it or queue it.

        Blockers list every conflicting same-scope commitment, active
        ones first (in activation order) then queued ones (in queue
        order).
        """
        if c.id in self._seen:
            raise DuplicateId(f"commitment id {c.id!r} already submitted")
        if c.state is not LifecycleState.PENDING:
            raise IllegalState(f"submit requires a pending commitment, got {c.state.value}")
        self._clock = max(self._clock, c.arrival)
        blockers = [x.id for x in self._active.values() if _blocks(c, x)]
        blockers += [x.id for x in self._queue if _blocks(c, x)]
        self._seen.add(c.id)
        if blockers:
            self._queue.append(transition(c, TransitionEvent.ENQUEUE))
            return Decision(DecisionKind.WAIT, tuple(blockers))
        admitted = transition(c, TransitionEvent.ACTIVATE)
        self._active[admitted.id] = admitted
        return Decision(DecisionKind.EXECUTE)

    def on_complete(self, cid: str, outcome: LifecycleState) -> list[Commitment]:
        """Retire an active commitment and activate eligible waiters.

        ``outcome`` is Completed or Failed; either releases the scope.
        Returns the newly activated commitments in activation order.
        """
        events = {
            LifecycleState.COMPLETED: TransitionEvent.COMPLETE,
            LifecycleState.FAILED: TransitionEvent.FAIL,
        }
        if outcome not in events:
            raise ValueError(f"outcome must be completed or failed, got {outcome}")
        return self._retire(cid, events[outcome])

    def on_violation(self, cid: str) -> list[Commitment]:
        """Retire an active commitment whose action breached a responsibility.

        Scheduling-wise a violation releases the scope exactly like a
        completion; the commitment ends Violated.
        """
        return self._retire(cid, TransitionEvent.VIOLATE)

    def set_policy(self, policy: Policy) -> None:
        """Switch the service policy; only legal while the queue is empty."""
        if self._queue:
            raise NonEmptyQueue("cannot switch policy with queued commitments")
        self.policy = policy

    def snapshot(self) -> MonitoringReport:
        """Per-service commitment counts by state plus the current queue."""
        counts: dict[str, dict[LifecycleState, int]] = {
            svc: dict(states) for svc, states in self._tally.items()
        }
        for c in self._active.values():
            counts.setdefault(c.debtor, {})[LifecycleState.ACTIVE] = (
                counts.get(c.debtor, {}).get(LifecycleState.ACTIVE, 0) + 1
            )
        for c in self._queue:
            counts.setdefault(c.debtor, {})[LifecycleState.WAITING] = (
                counts.get(c.debtor, {}).get(LifecycleState.WAITING, 0) + 1
            )
        return MonitoringReport(
            by_service=counts,
            queue=tuple(c.id for c in self._queue),
        )

    def clone(self) -> "Scheduler":
        """Independent copy of the current state (values are immutable)."""
        twin = Scheduler(policy=self.policy)
        twin._active = dict(self._active)
        twin._queue = list(self._queue)
        twin._clock = self._clock
        twin._seen = set(self._seen)
        twin._tally = {svc: dict(states) for svc, states in self._tally.items()}
        return twin

    def _retire(self, cid: str, event: TransitionEvent) -> list[Commitment]:
        if cid not in self._active:
            raise UnknownId(f"no active commitment {cid!r}")
        retired = transition(self._active.pop(cid), event)
        per_service = self._tally.setdefault(retired.debtor, {})
        per_service[retired.state] = per_service.get(retired.state, 0) + 1
        activated: list[Commitment] = []
        while True:
            chosen = select_next(self._queue, self._active.values(), self.policy)
            if chosen is None:
                break
            self._queue.remove(chosen)
            admitted = transition(chosen, TransitionEvent.ACTIVATE)
            self._active[admitted.id] = admitted
            activated.append(admitted)
        return activated
