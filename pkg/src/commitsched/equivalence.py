"""Exhaustive scheduler-vs-oracle cross-check.

Enumerates every small instance over a fixed grid (access class, target,
priority per slot), replays each one through both the real scheduler and
the independent reference, and walks every completion order. Decisions,
blocker lists and activation orders must agree everywhere; the oracle's
state exploration additionally certifies that no reachable state is
unsafe and every run drains.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .model import (
    AccessClass,
    CommitmentKind,
    ContentAction,
    LifecycleState,
    RESPONSIBILITY_FOR_VERB,
    Verb,
    new_commitment,
)
from .oracle import (
    MiniCommitment,
    MiniInstance,
    ReferenceScheduler,
    explore,
)
from .scheduler import DecisionKind, Policy, Scheduler

_VERB_FOR_ACCESS = {
    AccessClass.READER: Verb.COLLECT,
    AccessClass.WRITER: Verb.POST,
}


def _real_commitment(mini: MiniCommitment) -> "Commitment":
    verb = _VERB_FOR_ACCESS[
        AccessClass.READER if mini.access == "reader" else AccessClass.WRITER
    ]
    content = (
        ContentAction(verb, mini.target, owner="owner", purpose="testing")
        if verb is Verb.COLLECT
        else ContentAction(verb, mini.target, veracity=True)
    )
    return new_commitment(
        mini.id,
        CommitmentKind.SOCIAL,
        RESPONSIBILITY_FOR_VERB[verb],
        debtor=f"svc-{mini.id}",
        creditor="net",
        content=content,
        explicit_priority=mini.priority,
        clock=mini.arrival,
    )


@dataclass
class GridReport:
    instances: int = 0       # (combination, completion order, policy) runs
    combinations: int = 0
    states_explored: int = 0
    unsafe_states: int = 0
    undrained: int = 0
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.unsafe_states and not self.undrained


def _check_combination(
    minis: tuple[MiniCommitment, ...], policy: Policy, report: GridReport
) -> None:
    label = ",".join(f"{m.id}:{m.access[0].upper()}({m.target})p{m.priority}" for m in minis)
    ref = ReferenceScheduler(policy.value)
    sched = Scheduler(policy)
    for mini in minis:
        expected = ref.submit(mini)
        got = sched.submit(_real_commitment(mini))
        got_kind = "execute" if got.kind is DecisionKind.EXECUTE else "wait"
        if (got_kind, got.blockers) != (expected.kind, expected.blockers):
            report.mismatches.append(
                f"[{policy.value}] {label}: submit {mini.id}: "
                f"oracle {expected.kind}{expected.blockers} vs "
                f"scheduler {got_kind}{got.blockers}"
            )
            return
    _dfs_completions(ref, sched, policy, label, report)


def _dfs_completions(
    ref: ReferenceScheduler,
    sched: Scheduler,
    policy: Policy,
    label: str,
    report: GridReport,
) -> None:
    active_ids = sorted(a.id for a in ref.active)
    if not active_ids:
        report.instances += 1
        if sched.queue:
            report.mismatches.append(f"[{policy.value}] {label}: scheduler left a queue")
        return
    for cid in active_ids:
        ref2 = ref.copy()
        sched2 = sched.clone()
        expected = ref2.complete(cid)
        try:
            got = [c.id for c in sched2.on_complete(cid, LifecycleState.COMPLETED)]
        except Exception as exc:  # divergence shows up as a scheduler error
            report.mismatches.append(
                f"[{policy.value}] {label}: complete {cid}: scheduler raised {exc!r}"
            )
            continue
        if got != expected:
            report.mismatches.append(
                f"[{policy.value}] {label}: complete {cid}: "
                f"oracle activates {expected} vs scheduler {got}"
            )
            continue
        _dfs_completions(ref2, sched2, policy, label, report)


def run_grid(
    max_commitments: int = 4,
    targets: tuple[str, ...] = ("d", "e"),
    priorities: tuple[int, ...] = (0, 10),
    policies: tuple[Policy, ...] = (Policy.FCFS, Policy.PRIORITY),
) -> GridReport:
    """Check every instance of the grid; report mismatches and oracle stats."""
    report = GridReport()
    accesses = ("reader", "writer")
    slots = list(product(accesses, targets, priorities))
    for n in range(1, max_commitments + 1):
        for combo in product(slots, repeat=n):
            minis = tuple(
                MiniCommitment(f"c{i}", access, target, priority, arrival=i)
                for i, (access, target, priority) in enumerate(combo)
            )
            report.combinations += 1
            exploration = explore(MiniInstance(minis))
            report.states_explored += exploration.states
            report.unsafe_states += exploration.unsafe_states
            report.undrained += exploration.undrained_outcomes
            for policy in policies:
                _check_combination(minis, policy, report)
    return report
