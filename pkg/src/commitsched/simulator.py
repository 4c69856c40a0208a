"""Scenario-driven simulation.

Runs a parsed scenario against a fresh (or seeded) world on a logical
clock: the authority gate registers services, ``submit`` commands build
commitments and push them through the scheduler, activation executes the
governance action immediately, and a responsibility breach retires the
commitment as Violated (releasing its scope like any completion).

The clock advances only on ``tick`` commands, so commands in between
share a time slice; same-tick submissions are linearized in file order.
Equal inputs produce byte-identical traces.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import (
    AlreadyMember,
    EngineError,
    NoCollectionRecord,
    ScenarioRuntimeError,
    UnknownNetwork,
)
from .model import (
    Commitment,
    CommitmentKind,
    ContentAction,
    LifecycleState,
    RESPONSIBILITY_FOR_VERB,
    Verb,
    new_commitment,
)
from .scenario import Command, Scenario, parse
from .scheduler import DecisionKind, MonitoringReport, Policy, Scheduler
from .trace import EventKind, ScheduleEvent, Trace
from .world import (
    Assignment,
    Detail,
    Violation,
    WorldState,
    exec_collect,
    exec_post,
    exec_reveal,
    exec_signoff,
    exec_tamper_guard,
)


@dataclass(frozen=True)
class RunResult:
    trace: Trace
    world: WorldState
    scheduler: Scheduler


def register(
    w: WorldState, service: str, network: str, accept: bool, clock: int = 0
) -> tuple[WorldState, ScheduleEvent]:
    """Authority decision on a signup: membership on accept, none on reject."""
    if network not in w.networks:
        raise UnknownNetwork(f"no network {network!r}")
    if w.is_member(service, network):
        raise AlreadyMember(f"{service!r} is already a member of {network!r}")
    if accept:
        return (
            w.with_member(service, network),
            ScheduleEvent(clock, EventKind.REGISTERED, service, (("network", network),)),
        )
    return (
        w,
        ScheduleEvent(clock, EventKind.REJECTED, service, (("network", network),)),
    )


class _Sim:
    """Mutable state of one scenario run."""

    def __init__(self, world: WorldState, policy_override: Policy | None):
        self.world = world
        self.policy_override = policy_override
        self.sched = Scheduler(policy_override or Policy.FCFS)
        self.clock = 0
        self.guards: dict[str, bool] = {}
        self.used_ids: set[str] = set()
        self.events: list[ScheduleEvent] = []
        self.current: Command | None = None

    # -- plumbing ----------------------------------------------------------

    def emit(self, kind: EventKind, subject: str, *attrs: tuple[str, str]) -> None:
        self.events.append(ScheduleEvent(self.clock, kind, subject, attrs))

    def fail(self, message: str) -> ScenarioRuntimeError:
        cmd = self.current
        return ScenarioRuntimeError(cmd.line if cmd else 0, cmd.verb if cmd else "?", message)

    def step(self, cmd: Command) -> None:
        self.current = cmd
        handler = getattr(self, f"_do_{cmd.verb.replace('-', '_')}")
        try:
            handler(**cmd.params)
        except ScenarioRuntimeError:
            raise
        except EngineError as exc:
            raise ScenarioRuntimeError(cmd.line, cmd.verb, str(exc)) from exc

    # -- commands ----------------------------------------------------------

    def _do_policy(self, policy: Policy) -> None:
        if self.policy_override is not None:
            return
        self.sched.set_policy(policy)

    def _do_network(self, name: str) -> None:
        self.world = self.world.with_network(name)

    def _do_purpose(self, network: str, token: str) -> None:
        self.world = self.world.with_purpose(network, token)

    def _do_signup(self, service: str, network: str, accept: bool) -> None:
        self.world, event = register(self.world, service, network, accept, self.clock)
        self.events.append(event)

    def _do_assign(self, service: str, responsibility) -> None:
        if not self.world.has_any_membership(service):
            raise self.fail(f"cannot assign responsibilities: {service!r} is not registered")
        self.emit(EventKind.ASSIGNED, service, ("resp", responsibility.value))

    def _do_assignment(self, id: str, service: str) -> None:
        self.world = self.world.with_assignment(Assignment(id, service))

    def _do_finish_assignment(self, id: str, status) -> None:
        self.world = self.world.with_finished_assignment(id, status)

    def _do_detail(self, key, owner, network, privacy, value) -> None:
        self.world = self.world.with_detail(Detail(key, owner, network, privacy, value))

    def _do_ttl(self, ticks: int) -> None:
        self.world = self.world.with_ttl(ticks)

    def _do_guard(self, name: str, value: bool) -> None:
        self.guards[name] = value

    def _do_tick(self, ticks: int) -> None:
        self.clock += ticks

    def _do_snapshot(self) -> None:
        report = self.sched.snapshot()
        self.emit(EventKind.SNAPSHOT, "scheduler", *_snapshot_attrs(report))

    def _do_complete(self, cid: str, failed: bool) -> None:
        holder = self.sched.active.get(cid)
        if holder is None:
            raise self.fail(f"no active commitment {cid!r}")
        outcome = LifecycleState.FAILED if failed else LifecycleState.COMPLETED
        activated = self.sched.on_complete(cid, outcome)
        kind = EventKind.FAILED if failed else EventKind.COMPLETED
        self.emit(kind, cid, ("service", holder.debtor))
        self._process_activations(activated)

    def _do_submit(
        self,
        cid: str,
        service: str,
        verb: Verb,
        target: str,
        priority: int | None,
        guard: str | None,
        owner: str | None,
        purpose: str | None,
        veracity: bool | None,
        requester: str | None,
        payload: str | None,
    ) -> None:
        if cid in self.used_ids:
            raise self.fail(f"commitment id {cid!r} already used")
        if not self.world.has_any_membership(service):
            raise self.fail(f"{service!r} was never accepted into a network")
        if guard is not None and not self.guards.get(guard, False):
            self.used_ids.add(cid)
            self.emit(EventKind.REJECTED, cid, ("guard", guard))
            return

        detail = None if verb is Verb.SIGNOFF else self.world.details.get(target)
        content = ContentAction(
            verb=verb,
            target=target,
            owner=owner,
            purpose=purpose,
            veracity=veracity,
            requester=requester,
            payload=payload,
        )
        creditor = detail.network if detail else _home_network(self.world, service)
        commitment = new_commitment(
            cid,
            CommitmentKind.SOCIAL,
            RESPONSIBILITY_FOR_VERB[verb],
            service,
            creditor,
            content,
            condition=guard,
            explicit_priority=priority,
            clock=self.clock,
            detail_privacy=self.world.detail_privacy(),
            target_owner=detail.owner if detail else None,
            used_ids=self.used_ids,
        )
        self.used_ids.add(cid)
        self.emit(
            EventKind.SUBMITTED,
            cid,
            ("service", service),
            ("verb", verb.value),
            ("target", target),
            ("access", commitment.access.value),
            ("prio", str(commitment.priority)),
        )
        decision = self.sched.submit(commitment)
        if decision.kind is DecisionKind.WAIT:
            self.emit(
                EventKind.WAITING,
                cid,
                ("service", service),
                ("blockers", ",".join(decision.blockers)),
            )
        else:
            self._process_activations([self.sched.active[cid]])

    # -- activation / governance --------------------------------------------

    def _process_activations(self, batch: list[Commitment]) -> None:
        work = deque(batch)
        while work:
            c = work.popleft()
            self.emit(EventKind.ACTIVATED, c.id, ("service", c.debtor))
            violation = self._execute(c)
            if violation is not None:
                attrs = [
                    ("service", c.debtor),
                    ("resp", violation.responsibility.value),
                    ("reason", violation.reason),
                ]
                if violation.items:
                    attrs.append(("assignments", ",".join(violation.items)))
                self.emit(EventKind.VIOLATION, c.id, *attrs)
                work.extend(self.sched.on_violation(c.id))

    def _execute(self, c: Commitment) -> Violation | None:
        verb = c.content.verb
        if verb is Verb.COLLECT:
            result = exec_collect(
                self.world, c.debtor, c.content.target, c.content.purpose, self.clock
            )
            if isinstance(result, Violation):
                return result
            self.world, _ = result
            return None
        if verb is Verb.POST:
            return self._write(c, veracity=bool(c.content.veracity))
        if verb is Verb.TAMPER:
            try:
                return exec_tamper_guard(self.world, c.debtor, c.content.target, self.clock)
            except NoCollectionRecord:
                # Nothing was ever collected: the attempt degrades to an
                # ordinary write and answers to resp2 instead.
                return self._write(c, veracity=True)
        if verb is Verb.SIGNOFF:
            result = exec_signoff(self.world, c.debtor, self.clock)
            if isinstance(result, Violation):
                return result
            self.world, networks = result
            self.emit(
                EventKind.SIGNEDOFF, c.debtor, ("network", ",".join(networks))
            )
            return None
        if verb is Verb.REVEAL:
            result = exec_reveal(
                self.world, c.debtor, c.content.target, c.content.requester, self.clock
            )
            return result if isinstance(result, Violation) else None
        raise AssertionError(f"unhandled verb {verb}")

    def _write(self, c: Commitment, veracity: bool) -> Violation | None:
        detail = self.world.details.get(c.content.target)
        network = detail.network if detail else c.creditor
        result = exec_post(
            self.world,
            c.debtor,
            c.content.target,
            veracity,
            self.clock,
            network=network if network in self.world.networks else None,
            value=c.content.payload,
        )
        if isinstance(result, Violation):
            return result
        self.world = result
        return None


def _home_network(world: WorldState, service: str) -> str:
    networks = world.member_networks(service)
    return networks[0] if networks else "-"


def _snapshot_attrs(report: MonitoringReport) -> list[tuple[str, str]]:
    attrs = [("queue", ",".join(report.queue) if report.queue else "-")]
    state_order = list(LifecycleState)
    for service in sorted(report.by_service):
        per = report.by_service[service]
        for state in state_order:
            n = per.get(state, 0)
            if n:
                attrs.append((f"{service}.{state.value.capitalize()}", str(n)))
    return attrs


def run(
    scenario: Scenario,
    world: WorldState | None = None,
    *,
    policy_override: Policy | None = None,
) -> RunResult:
    """Execute a scenario and return its trace and final state."""
    sim = _Sim(world if world is not None else WorldState(), policy_override)
    for cmd in scenario.commands:
        sim.step(cmd)
    trace = Trace(tuple(sim.events), sim.clock)
    return RunResult(trace, sim.world, sim.sched)


def four_network_demo() -> Scenario:
    """The bundled four-network application scenario."""
    from .scenarios import load_text

    return parse(load_text("four-network-demo"), source="four-network-demo")
