"""Randomized scheduler workloads.

Generates seeded random submit/complete interleavings and checks, after
every single step, that no two active same-scope commitments include a
writer and that nobody waits without a blocker. Every activation
eventually receives a completion, so each scenario must end fully
drained.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .model import (
    CommitmentKind,
    ContentAction,
    LifecycleState,
    RESPONSIBILITY_FOR_VERB,
    Verb,
    new_commitment,
)
from .relations import classify, conflicts, same_scope
from .scheduler import Policy, Scheduler


@dataclass(frozen=True)
class StressConfig:
    seed: int = 20260810
    scenarios: int = 1000
    max_commitments: int = 20
    targets: int = 4
    priorities: tuple[int, ...] = (0, 10)


@dataclass
class StressReport:
    scenarios: int = 0
    steps: int = 0
    activations: int = 0
    safety_violations: int = 0
    gratuitous_waits: int = 0
    undrained: int = 0
    by_policy: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not (self.safety_violations or self.gratuitous_waits or self.undrained)


def _mk(cid: str, writer: bool, target: str, priority: int, arrival: int):
    verb = Verb.POST if writer else Verb.COLLECT
    content = (
        ContentAction(verb, target, veracity=True)
        if writer
        else ContentAction(verb, target, owner="owner", purpose="testing")
    )
    return new_commitment(
        cid,
        CommitmentKind.SOCIAL,
        RESPONSIBILITY_FOR_VERB[verb],
        debtor=f"svc{int(cid[1:]) % 5}",
        creditor="net",
        content=content,
        explicit_priority=priority,
        clock=arrival,
    )


def _check_invariants(sched: Scheduler, report: StressReport) -> None:
    actives = list(sched.active.values())
    for i, a in enumerate(actives):
        for b in actives[i + 1:]:
            if same_scope(a, b) and conflicts(classify(a, b)):
                report.safety_violations += 1
    queue = sched.queue
    for idx, waiting in enumerate(queue):
        blockers = [x for x in actives if same_scope(waiting, x) and conflicts(classify(waiting, x))]
        blockers += [
            x for x in queue[:idx] if same_scope(waiting, x) and conflicts(classify(waiting, x))
        ]
        if not blockers:
            report.gratuitous_waits += 1


def run_stress(config: StressConfig = StressConfig()) -> StressReport:
    """Run the random corpus; the report must come back fully clean."""
    rng = random.Random(config.seed)
    report = StressReport()
    for case in range(config.scenarios):
        policy = Policy.FCFS if case % 2 == 0 else Policy.PRIORITY
        report.by_policy[policy.value] = report.by_policy.get(policy.value, 0) + 1
        sched = Scheduler(policy)
        n = rng.randint(1, config.max_commitments)
        clock = 0
        pending = []
        for i in range(n):
            clock += rng.choice((0, 0, 1))  # occasional shared time slices
            pending.append(
                _mk(
                    f"c{i}",
                    writer=rng.random() < 0.5,
                    target=f"t{rng.randrange(config.targets)}",
                    priority=rng.choice(config.priorities),
                    arrival=clock,
                )
            )
        pending.reverse()  # pop() serves in arrival order
        while pending or sched.active:
            submit_next = pending and (not sched.active or rng.random() < 0.55)
            if submit_next:
                sched.submit(pending.pop())
            else:
                cid = rng.choice(sorted(sched.active))
                outcome = (
                    LifecycleState.COMPLETED
                    if rng.random() < 0.8
                    else LifecycleState.FAILED
                )
                report.activations += len(sched.on_complete(cid, outcome))
            report.steps += 1
            _check_invariants(sched, report)
        if sched.queue or sched.active:
            report.undrained += 1
        report.scenarios += 1
    return report
