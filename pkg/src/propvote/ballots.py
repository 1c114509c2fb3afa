"""Ballot-file parsing and serialization of profiles, traces and verdicts.

File grammar (``#`` starts a comment, blank lines ignored)::

    candidates: <id> <id> ...
    k: <int>
    [<count>:] <group> (> <group>)*

where ``<group>`` is a bare ``<id>`` or ``{<id>, <id>, ...}`` for an
equivalence class, groups run from most to least preferred, and a leading
``<count>:`` repeats the ballot.  Candidates a ballot omits form an implicit
final class.  Identifiers may not contain whitespace, ``{ } , > : #`` or be
all digits (a leading integer is always a multiplicity).

All numeric output is exact rational text ``p/q``; no floating point appears
in any serialized artifact.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .core import Candidate, Committee, Profile, WeakOrder, complete_order
from .ear import EarTrace
from .phragmen import PhragmenTrace
from .quota import Quota
from .stv import StvTrace

TRACE_SCHEMA = "propvote/trace/1"
VERDICT_SCHEMA = "propvote/verdict/1"
MONOTONICITY_SCHEMA = "propvote/monotonicity/1"

_ID_RE = re.compile(r"[^\s{},>:#]+")


class ParseError(ValueError):
    """Ballot-file syntax or consistency error, with 1-based position."""

    def __init__(self, message: str, line: int, col: int = 1):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


def _strip_comment(raw: str) -> str:
    pos = raw.find("#")
    return raw if pos < 0 else raw[:pos]


def _check_id(token: str, line: int, col: int) -> str:
    if token.isdigit():
        raise ParseError(f"candidate id {token!r} may not be all digits", line, col)
    return token


class _LineScanner:
    def __init__(self, text: str, line: int):
        self.text = text
        self.line = line
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def done(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, char: str) -> None:
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != char:
            raise ParseError(f"expected {char!r}", self.line, self.pos + 1)
        self.pos += 1

    def ident(self) -> tuple[str, int]:
        self.skip_ws()
        match = _ID_RE.match(self.text, self.pos)
        if not match:
            raise ParseError("expected a candidate id", self.line, self.pos + 1)
        self.pos = match.end()
        return match.group(), match.start() + 1


def _parse_group(scan: _LineScanner) -> list[tuple[str, int]]:
    if scan.peek() == "{":
        scan.take("{")
        items = [scan.ident()]
        while scan.peek() == ",":
            scan.take(",")
            items.append(scan.ident())
        scan.take("}")
        return items
    return [scan.ident()]


def parse_ballots(text: str) -> Profile:
    """Parse a ballot file into a :class:`Profile`.

    Raises :class:`ParseError` (with line and column) on duplicate
    candidates within a ballot, unknown ids, bad multiplicities, or a
    committee size out of range.
    """
    candidates: list[str] | None = None
    k: int | None = None
    voters: list[WeakOrder] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw).strip()
        if not body:
            continue
        if body.startswith("candidates:"):
            if candidates is not None:
                raise ParseError("duplicate candidates header", lineno)
            tokens = body[len("candidates:"):].split()
            if not tokens:
                raise ParseError("empty candidate list", lineno)
            seen: set[str] = set()
            for tok in tokens:
                _check_id(tok, lineno, 1)
                if not _ID_RE.fullmatch(tok):
                    raise ParseError(f"invalid candidate id {tok!r}", lineno)
                if tok in seen:
                    raise ParseError(f"duplicate candidate id {tok!r}", lineno)
                seen.add(tok)
            candidates = tokens
            continue
        if body.startswith("k:"):
            if k is not None:
                raise ParseError("duplicate k header", lineno)
            try:
                k = int(body[len("k:"):].strip())
            except ValueError:
                raise ParseError("k must be an integer", lineno) from None
            continue
        if candidates is None or k is None:
            raise ParseError("ballots before the candidates/k headers", lineno)

        count = 1
        rest = body
        head = re.match(r"^(\d+)\s*:\s*(.*)$", body)
        if head:
            count = int(head.group(1))
            if count < 1:
                raise ParseError("multiplicity must be >= 1", lineno)
            rest = head.group(2)
        scan = _LineScanner(rest, lineno)
        classes: list[list[str]] = []
        listed: set[str] = set()
        while True:
            group = _parse_group(scan)
            cls = []
            for name, col in group:
                _check_id(name, lineno, col)
                if name not in candidates:
                    raise ParseError(f"unknown candidate {name!r}", lineno, col)
                if name in listed:
                    raise ParseError(f"candidate {name!r} repeated in ballot", lineno, col)
                listed.add(name)
                cls.append(name)
            classes.append(cls)
            if scan.done():
                break
            scan.take(">")
        order = complete_order(classes, candidates)
        voters.extend([order] * count)

    if candidates is None:
        raise ParseError("missing candidates header", 1)
    if k is None:
        raise ParseError("missing k header", 1)
    if not voters:
        raise ParseError("no ballots", 1)
    try:
        return Profile(frozenset(candidates), tuple(voters), k)
    except ValueError as exc:
        raise ParseError(str(exc), 1) from None


def format_class(cls: frozenset[Candidate]) -> str:
    members = sorted(cls)
    if len(members) == 1:
        return members[0]
    return "{" + ", ".join(members) + "}"


def format_ballot(order: WeakOrder) -> str:
    """One ballot, normalized: classes best-first, ids sorted inside each
    class, the implicit tail left implicit."""
    return " > ".join(format_class(cls) for cls in order.listed_classes)


def serialize_profile(profile: Profile) -> str:
    """Normalized ballot file; parsing it back reproduces the profile."""
    lines = [
        "candidates: " + " ".join(profile.sorted_candidates),
        f"k: {profile.k}",
    ]
    lines.extend(format_ballot(v) for v in profile.voters)
    return "\n".join(lines) + "\n"


def format_fraction(value: Fraction | int) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def _support_map(supports: dict[Candidate, Fraction]) -> dict[str, str]:
    return {c: format_fraction(s) for c, s in sorted(supports.items())}


def trace_to_dict(rule: str, committee: Committee, trace) -> dict[str, Any]:
    """Stable, machine-readable record of a rule run (exact rationals only)."""
    rounds: list[dict[str, Any]] = []
    if isinstance(trace, EarTrace):
        for i, r in enumerate(trace.rounds, start=1):
            rounds.append({
                "round": i,
                "depth": r.depth,
                "action": "elect",
                "candidates": [r.elected],
                "supports": _support_map(r.supports),
                "weights_after": [format_fraction(w) for w in r.weights_after],
            })
        for c in trace.filled_by_priority:
            rounds.append({
                "round": len(rounds) + 1,
                "action": "fill-by-priority",
                "candidates": [c],
            })
    elif isinstance(trace, (StvTrace, PhragmenTrace)):
        for i, r in enumerate(trace.rounds, start=1):
            action = r.action.value if isinstance(trace, StvTrace) else "elect"
            cands = list(r.candidates) if isinstance(trace, StvTrace) else [r.elected]
            rounds.append({
                "round": i,
                "action": action,
                "candidates": cands,
                "supports": _support_map(r.supports),
                "weights_after": [format_fraction(w) for w in r.weights_after],
            })
    else:
        raise TypeError(f"unsupported trace type {type(trace).__name__}")
    return {
        "schema": TRACE_SCHEMA,
        "rule": rule,
        "committee": sorted(committee.members),
        "election_order": list(committee.election_order),
        "rounds": rounds,
    }


def serialize_trace(rule: str, committee: Committee, trace) -> str:
    return json.dumps(trace_to_dict(rule, committee, trace), indent=2) + "\n"


def quota_to_dict(q: Quota) -> dict[str, str]:
    return {"value": format_fraction(q.value), "mode": q.mode.value}


def verdict_to_dict(verdict, q: Quota | None = None) -> dict[str, Any]:
    out: dict[str, Any] = {
        "schema": VERDICT_SCHEMA,
        "axiom": verdict.axiom,
        "status": verdict.status,
        "quota": quota_to_dict(q) if q is not None else None,
        "witness": None,
    }
    if verdict.witness is not None:
        w = verdict.witness
        out["witness"] = {
            "voters": list(w.voters),
            "supported": list(w.supported),
            "ell": w.ell,
            "detail": w.detail,
        }
    return out


def monotonicity_to_dict(verdict, rule: str) -> dict[str, Any]:
    out: dict[str, Any] = {
        "schema": MONOTONICITY_SCHEMA,
        "variant": verdict.variant,
        "rule": rule,
        "status": verdict.status,
        "witness": None,
    }
    if verdict.witness is not None:
        w = verdict.witness
        out["witness"] = {
            "reinforcements": [
                {
                    "voter": r.voter,
                    "candidate": r.candidate,
                    "ballot_before": format_ballot(r.before),
                    "ballot_after": format_ballot(r.after),
                    "crossed": sorted(r.crossed),
                }
                for r in w.reinforcements
            ],
            "committee_before": sorted(w.committee_before.members),
            "committee_after": sorted(w.committee_after.members),
        }
    return out
