"""Phragmen's first method, plus the Hare-quota variant of the expanding
approvals rule kept here for side-by-side comparisons.

Each round, every voter approves their most preferred equivalence class
among the not-yet-seated candidates (the whole class, restricted to unseated
members).  The candidate with the largest weighted approval is seated.  If
its supporters' total weight T exceeds the Hare quota they are uniformly
scaled by (T - q_H)/T; otherwise all supporters' weights drop to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Candidate, Committee, Profile, WeakOrder, initial_weights
from .ear import EarConfig, EarTrace, ear
from .quota import hare_quota


@dataclass(frozen=True)
class PhragmenRound:
    supports: dict[Candidate, Fraction]
    elected: Candidate
    weights_after: tuple[Fraction, ...]


@dataclass(frozen=True)
class PhragmenTrace:
    rounds: tuple[PhragmenRound, ...]


def _approval_set(order: WeakOrder, seated: set[Candidate]) -> frozenset[Candidate]:
    for cls in order.classes:
        live = cls - seated
        if live:
            return frozenset(live)
    return frozenset()


def _step(profile, weights, seated, quota_value):
    supports: dict[Candidate, Fraction] = {
        c: Fraction(0) for c in profile.candidates if c not in seated
    }
    approvers: dict[Candidate, list[int]] = {c: [] for c in supports}
    for v, order in enumerate(profile.voters):
        for c in _approval_set(order, seated):
            supports[c] += weights[v]
            approvers[c].append(v)
    best = max(supports.values())
    tied = sorted(c for c, s in supports.items() if s == best)
    return supports, approvers, tied


def _reduce(weights, supporters, quota_value) -> None:
    total = sum((weights[v] for v in supporters), Fraction(0))
    if total > quota_value:
        factor = (total - quota_value) / total
        for v in supporters:
            weights[v] *= factor
    else:
        for v in supporters:
            weights[v] = Fraction(0)


def phragmen_first(profile: Profile) -> tuple[Committee, PhragmenTrace]:
    """Deterministic run; ties for the largest approval go lexicographically."""
    q = hare_quota(profile.n, profile.k).value
    weights = initial_weights(profile.n)
    seated: list[Candidate] = []
    rounds: list[PhragmenRound] = []
    while len(seated) < profile.k:
        supports, approvers, tied = _step(profile, weights, set(seated), q)
        winner = tied[0]
        _reduce(weights, approvers[winner], q)
        seated.append(winner)
        rounds.append(PhragmenRound(supports, winner, tuple(weights)))
    return Committee(frozenset(seated), tuple(seated)), PhragmenTrace(tuple(rounds))


def phragmen_first_all_outcomes(profile: Profile) -> set[frozenset[Candidate]]:
    """Every committee reachable under some resolution of max-support ties."""
    q = hare_quota(profile.n, profile.k).value
    outcomes: set[frozenset[Candidate]] = set()
    seen: set = set()

    def explore(weights: tuple[Fraction, ...], seated: frozenset[Candidate]) -> None:
        if len(seated) == profile.k:
            outcomes.add(seated)
            return
        key = (weights, seated)
        if key in seen:
            return
        seen.add(key)
        supports, approvers, tied = _step(profile, list(weights), set(seated), q)
        for winner in tied:
            branch = list(weights)
            _reduce(branch, approvers[winner], q)
            explore(tuple(branch), seated | {winner})

    explore(tuple(initial_weights(profile.n)), frozenset())
    return outcomes


def hare_ear(profile: Profile) -> tuple[Committee, EarTrace]:
    """The expanding approvals rule run with the Hare quota n/k."""
    return ear(profile, EarConfig(quota=hare_quota(profile.n, profile.k)))
