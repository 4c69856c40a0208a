"""Line-based scenario grammar.

One command per line, tokens whitespace-separated, ``#`` starts a
comment. Commands:

    policy <fcfs|priority>
    network <name>
    purpose <network> <token>
    signup <service> <network> <accept|reject>
    assign <service> <resp1|resp2|resp3|resp4|resp5>
    assignment <id> <service>
    finish-assignment <id> <complete|failed>
    detail <key> <owner> <network> <public|private> <value>
    ttl <ticks>
    submit <cid> <service> <verb> <target> [arg...] [prio=<n>] [if=<guard>]
    guard <name> <true|false>
    complete <cid> [failed]
    tick [n]
    snapshot

Verb-specific submit arguments:

    collect <detail> <owner> <purpose>
    post    <detail> <true|false> [value]
    tamper  <detail> [value]
    signoff <service>            (must equal the submitting service)
    reveal  <detail> <requester>

Parsing validates verbs, arity and enum tokens up front; anything else
(unknown networks, duplicate ids, ...) surfaces at run time.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any

from .errors import ParseError
from .model import Privacy, Responsibility, Verb
from .scheduler import Policy
from .world import AssignmentStatus

_TOKEN = re.compile(r"\S+")


@dataclass(frozen=True)
class Command:
    """One validated scenario command."""

    verb: str
    line: int
    params: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class Scenario:
    """A parsed scenario file: ordered commands plus the source name."""

    commands: tuple[Command, ...]
    source: str = "<string>"


def _tokens(raw: str) -> list[tuple[str, int]]:
    body = raw.split("#", 1)[0]
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]


def _enum(table: dict[str, Any], token: str, col: int, line: int, what: str) -> Any:
    try:
        return table[token]
    except KeyError:
        options = "|".join(sorted(table))
        raise ParseError(line, col, f"bad {what} {token!r} (expected {options})") from None


def _int(token: str, col: int, line: int, what: str, minimum: int = 0) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(line, col, f"bad {what} {token!r} (expected integer)") from None
    if value < minimum:
        raise ParseError(line, col, f"{what} must be >= {minimum}, got {value}")
    return value


_POLICIES = {p.value: p for p in Policy}
_PRIVACIES = {p.value: p for p in Privacy}
_RESPONSIBILITIES = {r.value: r for r in Responsibility}
_VERBS = {v.value: v for v in Verb}
_DECISIONS = {"accept": True, "reject": False}
_FINISHES = {"complete": AssignmentStatus.COMPLETE, "failed": AssignmentStatus.FAILED}
_BOOLS = {"true": True, "false": False}

# verb -> (min positional args after target, max, names)
_SUBMIT_ARGS = {
    Verb.COLLECT: (2, 2, ("owner", "purpose")),
    Verb.POST: (1, 2, ("veracity", "payload")),
    Verb.TAMPER: (0, 1, ("payload",)),
    Verb.SIGNOFF: (0, 0, ()),
    Verb.REVEAL: (1, 1, ("requester",)),
}


def parse(text: str, source: str = "<string>") -> Scenario:
    """Parse scenario text, rejecting malformed commands with locations."""
    commands: list[Command] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _tokens(raw)
        if not toks:
            continue
        verb, col = toks[0]
        rest = toks[1:]
        builder = _BUILDERS.get(verb)
        if builder is None:
            raise ParseError(lineno, col, f"unknown command {verb!r}")
        commands.append(Command(verb, lineno, builder(rest, lineno, col)))
    return Scenario(tuple(commands), source)


def _exact(rest, lineno, col, verb, n):
    if len(rest) != n:
        raise ParseError(lineno, col, f"{verb} takes {n} argument(s), got {len(rest)}")


def _parse_policy(rest, lineno, col):
    _exact(rest, lineno, col, "policy", 1)
    tok, c = rest[0]
    return {"policy": _enum(_POLICIES, tok, c, lineno, "policy")}


def _parse_network(rest, lineno, col):
    _exact(rest, lineno, col, "network", 1)
    return {"name": rest[0][0]}


def _parse_purpose(rest, lineno, col):
    _exact(rest, lineno, col, "purpose", 2)
    return {"network": rest[0][0], "token": rest[1][0]}


def _parse_signup(rest, lineno, col):
    _exact(rest, lineno, col, "signup", 3)
    tok, c = rest[2]
    return {
        "service": rest[0][0],
        "network": rest[1][0],
        "accept": _enum(_DECISIONS, tok, c, lineno, "decision"),
    }


def _parse_assign(rest, lineno, col):
    _exact(rest, lineno, col, "assign", 2)
    tok, c = rest[1]
    return {
        "service": rest[0][0],
        "responsibility": _enum(_RESPONSIBILITIES, tok, c, lineno, "responsibility"),
    }


def _parse_assignment(rest, lineno, col):
    _exact(rest, lineno, col, "assignment", 2)
    return {"id": rest[0][0], "service": rest[1][0]}


def _parse_finish(rest, lineno, col):
    _exact(rest, lineno, col, "finish-assignment", 2)
    tok, c = rest[1]
    return {"id": rest[0][0], "status": _enum(_FINISHES, tok, c, lineno, "status")}


def _parse_detail(rest, lineno, col):
    _exact(rest, lineno, col, "detail", 5)
    tok, c = rest[3]
    return {
        "key": rest[0][0],
        "owner": rest[1][0],
        "network": rest[2][0],
        "privacy": _enum(_PRIVACIES, tok, c, lineno, "privacy"),
        "value": rest[4][0],
    }


def _parse_ttl(rest, lineno, col):
    _exact(rest, lineno, col, "ttl", 1)
    tok, c = rest[0]
    return {"ticks": _int(tok, c, lineno, "ttl")}


def _parse_guard(rest, lineno, col):
    _exact(rest, lineno, col, "guard", 2)
    tok, c = rest[1]
    return {"name": rest[0][0], "value": _enum(_BOOLS, tok, c, lineno, "guard value")}


def _parse_complete(rest, lineno, col):
    if not rest or len(rest) > 2:
        raise ParseError(lineno, col, "complete takes <cid> [failed]")
    failed = False
    if len(rest) == 2:
        tok, c = rest[1]
        if tok != "failed":
            raise ParseError(lineno, c, f"expected 'failed', got {tok!r}")
        failed = True
    return {"cid": rest[0][0], "failed": failed}


def _parse_tick(rest, lineno, col):
    if len(rest) > 1:
        raise ParseError(lineno, col, "tick takes at most one argument")
    if rest:
        tok, c = rest[0]
        return {"ticks": _int(tok, c, lineno, "tick count", minimum=1)}
    return {"ticks": 1}


def _parse_snapshot(rest, lineno, col):
    _exact(rest, lineno, col, "snapshot", 0)
    return {}


def _parse_submit(rest, lineno, col):
    if len(rest) < 4:
        raise ParseError(
            lineno, col, "submit takes <cid> <service> <verb> <target> [arg...]"
        )
    cid = rest[0][0]
    service = rest[1][0]
    vtok, vcol = rest[2]
    verb = _enum(_VERBS, vtok, vcol, lineno, "action verb")
    target, tcol = rest[3]
    positional: list[tuple[str, int]] = []
    priority: int | None = None
    guard: str | None = None
    for tok, c in rest[4:]:
        if tok.startswith("prio="):
            priority = _int(tok[5:], c, lineno, "priority")
        elif tok.startswith("if="):
            guard = tok[3:]
            if not guard:
                raise ParseError(lineno, c, "if= requires a guard name")
        elif "=" in tok:
            raise ParseError(lineno, c, f"unknown option {tok!r}")
        else:
            positional.append((tok, c))
    lo, hi, names = _SUBMIT_ARGS[verb]
    if not (lo <= len(positional) <= hi):
        span = str(lo) if lo == hi else f"{lo}-{hi}"
        raise ParseError(
            lineno, col, f"{vtok} takes {span} argument(s) after target, got {len(positional)}"
        )
    params: dict[str, Any] = {
        "cid": cid,
        "service": service,
        "verb": verb,
        "target": target,
        "priority": priority,
        "guard": guard,
        "owner": None,
        "purpose": None,
        "veracity": None,
        "requester": None,
        "payload": None,
    }
    for (tok, c), name in zip(positional, names):
        if name == "veracity":
            params[name] = _enum(_BOOLS, tok, c, lineno, "veracity")
        else:
            params[name] = tok
    if verb is Verb.SIGNOFF and target != service:
        raise ParseError(
            lineno, tcol, f"signoff target must be the service itself ({service!r})"
        )
    return params


_BUILDERS = {
    "policy": _parse_policy,
    "network": _parse_network,
    "purpose": _parse_purpose,
    "signup": _parse_signup,
    "assign": _parse_assign,
    "assignment": _parse_assignment,
    "finish-assignment": _parse_finish,
    "detail": _parse_detail,
    "ttl": _parse_ttl,
    "submit": _parse_submit,
    "guard": _parse_guard,
    "complete": _parse_complete,
    "tick": _parse_tick,
    "snapshot": _parse_snapshot,
}
