"""Shared social-network state and the five responsibility checks.

The world holds networks, memberships, owned details (each with a
privacy level), approved collection records, and work assignments. The
``exec_*`` functions run one commitment's content action against it and
either return an updated world or a ``Violation`` naming the breached
responsibility. A violation never changes the world: callers keep their
input value, so atomicity is structural.

Responsibilities enforced here:
  resp1  collecting a detail needs a valid purpose and network membership
  resp2  posted content must be true (and the poster a member)
  resp3  collected details must not be tampered with afterwards
  resp4  signing off requires no ongoing assignments
  resp5  revealing a public detail to non-members is authorized only
         within ``reveal_ttl`` ticks of an approved collection
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

from .errors import (
    AlreadyMember,
    DuplicateAssignment,
    DuplicateDetail,
    IllegalStatusChange,
    NoCollectionRecord,
    OwnerNotMember,
    UnknownAssignment,
    UnknownDetail,
    UnknownNetwork,
    UnknownService,
)
from .model import Privacy, Responsibility

DEFAULT_REVEAL_TTL = 100


class AssignmentStatus(Enum):
    ONGOING = "ongoing"
    COMPLETE = "complete"
    FAILED = "failed"


@dataclass(frozen=True)
class Detail:
    """One piece of owned information living in a network."""

    key: str
    owner: str
    network: str
    privacy: Privacy
    value: str
    veracity: bool = True


@dataclass(frozen=True)
class CollectionRecord:
    """Approved collection of a detail; immutable, snapshots the value."""

    detail_key: str
    collector: str
    purpose: str
    approved_at: int
    snapshot: str


@dataclass(frozen=True)
class Assignment:
    """A unit of work a service owes; blocks sign-off while ongoing."""

    id: str
    service: str
    status: AssignmentStatus = AssignmentStatus.ONGOING


@dataclass(frozen=True)
class Violation:
    """A breached responsibility; returned, never raised."""

    responsibility: Responsibility
    reason: str
    items: tuple[str, ...] = ()


@dataclass(frozen=True)
class WorldState:
    """Immutable world value; update helpers return new instances."""

    networks: frozenset[str] = frozenset()
    members: frozenset[tuple[str, str]] = frozenset()
    details: dict[str, Detail] = field(default_factory=dict)
    collections: tuple[CollectionRecord, ...] = ()
    assignments: tuple[Assignment, ...] = ()
    purposes: dict[str, frozenset[str]] = field(default_factory=dict)
    reveal_ttl: int = DEFAULT_REVEAL_TTL

    # -- queries ----------------------------------------------------------

    def is_member(self, service: str, network: str) -> bool:
        return (service, network) in self.members

    def member_networks(self, service: str) -> tuple[str, ...]:
        return tuple(sorted(n for s, n in self.members if s == service))

    def has_any_membership(self, service: str) -> bool:
        return any(s == service for s, _ in self.members)

    def detail_privacy(self) -> dict[str, Privacy]:
        return {key: d.privacy for key, d in self.details.items()}

    def records_for(self, detail_key: str) -> tuple[CollectionRecord, ...]:
        return tuple(r for r in self.collections if r.detail_key == detail_key)

    def assignment(self, assignment_id: str) -> Assignment:
        for a in self.assignments:
            if a.id == assignment_id:
                return a
        raise UnknownAssignment(f"no assignment {assignment_id!r}")

    def ongoing_assignments(self, service: str) -> tuple[str, ...]:
        return tuple(
            a.id for a in self.assignments
            if a.service == service and a.status is AssignmentStatus.ONGOING
        )

    # -- updates (copy-on-write) -------------------------------------------

    def with_network(self, name: str) -> "WorldState":
        return replace(self, networks=self.networks | {name})

    def with_purpose(self, network: str, token: str) -> "WorldState":
        if network not in self.networks:
            raise UnknownNetwork(f"no network {network!r}")
        current = self.purposes.get(network, frozenset())
        return replace(self, purposes={**self.purposes, network: current | {token}})

    def with_member(self, service: str, network: str) -> "WorldState":
        if network not in self.networks:
            raise UnknownNetwork(f"no network {network!r}")
        if self.is_member(service, network):
            raise AlreadyMember(f"{service!r} is already a member of {network!r}")
        return replace(self, members=self.members | {(service, network)})

    def without_memberships(self, service: str) -> "WorldState":
        kept = frozenset(pair for pair in self.members if pair[0] != service)
        return replace(self, members=kept)

    def with_detail(self, detail: Detail) -> "WorldState":
        if detail.key in self.details:
            raise DuplicateDetail(f"detail {detail.key!r} already exists")
        if detail.network not in self.networks:
            raise UnknownNetwork(f"no network {detail.network!r}")
        if not self.is_member(detail.owner, detail.network):
            raise OwnerNotMember(
                f"owner {detail.owner!r} is not a member of {detail.network!r}"
            )
        return replace(self, details={**self.details, detail.key: detail})

    def with_detail_value(self, key: str, value: str, veracity: bool) -> "WorldState":
        d = self.details.get(key)
        if d is None:
            raise UnknownDetail(f"no detail {key!r}")
        updated = replace(d, value=value, veracity=veracity)
        return replace(self, details={**self.details, key: updated})

    def with_collection(self, record: CollectionRecord) -> "WorldState":
        if record.detail_key not in self.details:
            raise UnknownDetail(f"no detail {record.detail_key!r}")
        return replace(self, collections=self.collections + (record,))

    def with_assignment(self, assignment: Assignment) -> "WorldState":
        if any(a.id == assignment.id for a in self.assignments):
            raise DuplicateAssignment(f"assignment {assignment.id!r} already exists")
        return replace(self, assignments=self.assignments + (assignment,))

    def with_finished_assignment(
        self, assignment_id: str, outcome: AssignmentStatus
    ) -> "WorldState":
        if outcome is AssignmentStatus.ONGOING:
            raise IllegalStatusChange("an assignment cannot move back to ongoing")
        current = self.assignment(assignment_id)
        if current.status is not AssignmentStatus.ONGOING:
            raise IllegalStatusChange(
                f"assignment {assignment_id!r} already {current.status.value}"
            )
        finished = replace(current, status=outcome)
        return replace(
            self,
            assignments=tuple(
                finished if a.id == assignment_id else a for a in self.assignments
            ),
        )

    def with_ttl(self, ticks: int) -> "WorldState":
        if ticks < 0:
            raise ValueError("reveal ttl must be >= 0")
        return replace(self, reveal_ttl=ticks)


# -- responsibility checks --------------------------------------------------

def valid(w: WorldState, network: str, purpose: str) -> bool:
    """True iff the purpose token is registered for the network."""
    if network not in w.networks:
        raise UnknownNetwork(f"no network {network!r}")
    return purpose in w.purposes.get(network, frozenset())


def exec_collect(
    w: WorldState, collector: str, detail_key: str, purpose: str, t: int
) -> tuple[WorldState, CollectionRecord] | Violation:
    """Collect a detail: needs a valid purpose and network membership (resp1)."""
    d = w.details.get(detail_key)
    if d is None:
        raise UnknownDetail(f"no detail {detail_key!r}")
    if not valid(w, d.network, purpose):
        return Violation(Responsibility.RESP1, "invalid-purpose")
    if not w.is_member(collector, d.network):
        return Violation(Responsibility.RESP1, "collector-not-member")
    record = CollectionRecord(detail_key, collector, purpose, t, d.value)
    return w.with_collection(record), record


def exec_post(
    w: WorldState,
    poster: str,
    detail_key: str,
    veracity: bool,
    t: int,
    *,
    network: str | None = None,
    value: str | None = None,
) -> WorldState | Violation:
    """Post a detail: content must be true and the poster a member (resp2).

    Posting an existing detail updates its value in place (the scheduler
    serializes writers, so last-writer-wins is safe). Posting a fresh key
    creates a public detail owned by the poster in ``network``.
    """
    d = w.details.get(detail_key)
    net = d.network if d is not None else network
    if net is None or net not in w.networks:
        raise UnknownNetwork(f"no network {net!r} to post into")
    if not veracity:
        return Violation(Responsibility.RESP2, "untrue-content")
    if not w.is_member(poster, net):
        return Violation(Responsibility.RESP2, "poster-not-member")
    new_value = value if value is not None else f"{poster}@t{t}"
    if d is not None:
        return w.with_detail_value(detail_key, new_value, veracity=True)
    created = Detail(detail_key, poster, net, Privacy.PUBLIC, new_value)
    return w.with_detail(created)


def exec_tamper_guard(
    w: WorldState, actor: str, detail_key: str, t: int
) -> Violation:
    """A tamper attempt on collected data is always a breach (resp3).

    Collection records are immutable values, so the snapshot survives
    untouched; the attempt is merely recorded as a violation. Without an
    approved collection the guard does not apply and NoCollectionRecord
    is raised: the action degrades to an ordinary write under resp2.
    """
    if detail_key not in w.details:
        raise UnknownDetail(f"no detail {detail_key!r}")
    if not w.records_for(detail_key):
        raise NoCollectionRecord(f"no approved collection for {detail_key!r}")
    return Violation(Responsibility.RESP3, "tamper-after-collection")


def exec_signoff(
    w: WorldState, service: str, t: int
) -> tuple[WorldState, tuple[str, ...]] | Violation:
    """Sign a service off its networks; blocked by ongoing assignments (resp4).

    Complete and failed assignments are both terminal and do not block.
    Returns the updated world and the networks the service left.
    """
    networks = w.member_networks(service)
    if not networks:
        raise UnknownService(f"{service!r} is not a member of any network")
    ongoing = w.ongoing_assignments(service)
    if ongoing:
        return Violation(Responsibility.RESP4, "ongoing-assignments", items=ongoing)
    return w.without_memberships(service), networks


def exec_reveal(
    w: WorldState, revealer: str, detail_key: str, requester: str, t: int
) -> str | Violation:
    """Reveal a detail's value to a requester (resp5).

    Members always get the value. Non-members never see private details;
    for public ones the disclosure is authorized only while an approved
    collection record is younger than ``reveal_ttl`` ticks.
    """
    d = w.details.get(detail_key)
    if d is None:
        raise UnknownDetail(f"no detail {detail_key!r}")
    if w.is_member(requester, d.network):
        return d.value
    if d.privacy is Privacy.PRIVATE:
        return Violation(Responsibility.RESP5, "private-to-nonmember")
    records = w.records_for(detail_key)
    if not records:
        return Violation(Responsibility.RESP5, "no-approved-collection")
    if any(t - r.approved_at <= w.reveal_ttl for r in records):
        return d.value
    return Violation(Responsibility.RESP5, "authorization-expired")


def status(w: WorldState, assignment_id: str) -> AssignmentStatus:
    """Current progress of an assignment."""
    return w.assignment(assignment_id).status
