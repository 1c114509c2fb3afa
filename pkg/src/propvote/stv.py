"""The single-transferable-vote family on strict profiles.

Each round, weighted plurality supports are tallied over the working profile
(the candidates neither seated nor excluded).  A candidate whose support
meets the quota is seated and removed, with its supporters' weight reduced by
the quota; if no candidate meets the quota, a candidate with the lowest
plurality support is excluded.  When the seated candidates plus the working
candidates exactly fill the committee, all remaining working candidates are
seated at once without reweighting.

Reweighting is either uniform fractional (every supporter scaled by
(T - q)/T) or discrete (an integer amount p >= q of supporter weight is
removed, zeroing voters in ballot order and reducing the last one
partially).

Tie handling is configurable: deterministic mode seats the lexicographically
smallest quota-meeting candidate and excludes the lexicographically largest
of the lowest-support candidates (so lexicographically smaller ids survive
ties); ``stv_all_outcomes`` branches over every resolution instead.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .core import Candidate, Committee, Profile, initial_weights, is_strict
from .quota import Quota, admissible, droop_quota, support_meets


class Action(enum.Enum):
    ELECT = "elect"
    ELIMINATE = "eliminate"
    BULK_ELECT = "bulk-elect"


@dataclass(frozen=True)
class StvConfig:
    """Options for :func:`stv`.

    discrete: None for uniform fractional reweighting, else the integer
    amount of supporter weight removed per seat (must be >= the quota value).
    """

    quota: Quota | None = None
    discrete: int | None = None
    allow_any_quota: bool = False


@dataclass(frozen=True)
class StvRound:
    supports: dict[Candidate, Fraction]
    action: Action
    candidates: tuple[Candidate, ...]
    weights_after: tuple[Fraction, ...]


@dataclass(frozen=True)
class StvTrace:
    rounds: tuple[StvRound, ...]

    @property
    def eliminated(self) -> tuple[Candidate, ...]:
        return tuple(
            c for r in self.rounds if r.action is Action.ELIMINATE for c in r.candidates
        )


class _Count:
    """Mutable tally state: voter pointers, per-candidate holders, supports."""

    def __init__(self, profile: Profile, weights: list[Fraction]):
        self.rankings = [v.flattened for v in profile.voters]
        self.weights = weights
        self.working: set[Candidate] = set(profile.candidates)
        self.ptr = [0] * profile.n
        self.holders: dict[Candidate, list[int]] = {c: [] for c in profile.candidates}
        self.support: dict[Candidate, Fraction] = {c: Fraction(0) for c in profile.candidates}
        for v, ranking in enumerate(self.rankings):
            top = ranking[0]
            self.holders[top].append(v)
            self.support[top] += weights[v]

    def remove(self, c: Candidate) -> None:
        self.working.discard(c)
        for v in self.holders.pop(c):
            ranking = self.rankings[v]
            i = self.ptr[v]
            while ranking[i] not in self.working:
                i += 1
            self.ptr[v] = i
            top = ranking[i]
            self.holders[top].append(v)
            self.support[top] += self.weights[v]
        del self.support[c]

    def copy(self) -> "_Count":
        dup = object.__new__(_Count)
        dup.rankings = self.rankings
        dup.weights = list(self.weights)
        dup.working = set(self.working)
        dup.ptr = list(self.ptr)
        dup.holders = {c: list(vs) for c, vs in self.holders.items()}
        dup.support = dict(self.support)
        return dup


def _resolve_config(profile: Profile, config: StvConfig | None) -> tuple[Quota, int | None]:
    cfg = config or StvConfig()
    if not is_strict(profile):
        raise ValueError("STV requires a strict profile")
    q = cfg.quota if cfg.quota is not None else droop_quota(profile.n, profile.k)
    if not cfg.allow_any_quota and not admissible(q, profile.n, profile.k):
        raise ValueError(
            f"quota {q.value} ({q.mode.value}) outside (n/(k+1), n/k]; "
            "pass allow_any_quota to override"
        )
    if cfg.discrete is not None:
        if cfg.discrete < q.value:
            raise ValueError("discrete reweighting amount must be >= the quota value")
    return q, cfg.discrete


def _reduce_elected(count: _Count, winner: Candidate, q: Quota, discrete: int | None) -> None:
    supporters = count.holders[winner]
    total = count.support[winner]
    if discrete is None:
        factor = (total - q.value) / total
        for v in supporters:
            count.weights[v] *= factor
        count.support[winner] = total * factor
    else:
        remaining = min(Fraction(discrete), total)
        for v in supporters:
            if remaining == 0:
                break
            take = min(count.weights[v], remaining)
            count.weights[v] -= take
            remaining -= take
        count.support[winner] = total - min(Fraction(discrete), total)


def stv(profile: Profile, config: StvConfig | None = None) -> tuple[Committee, StvTrace]:
    """Deterministic run of the STV family; returns committee and trace."""
    q, discrete = _resolve_config(profile, config)
    count = _Count(profile, initial_weights(profile.n))
    k = profile.k
    seated: list[Candidate] = []
    rounds: list[StvRound] = []

    while len(seated) < k:
        snapshot = dict(count.support)
        if len(seated) + len(count.working) == k:
            bulk = tuple(sorted(count.working))
            seated.extend(bulk)
            rounds.append(StvRound(snapshot, Action.BULK_ELECT, bulk, tuple(count.weights)))
            break
        meeting = sorted(c for c in count.working if support_meets(count.support[c], q))
        if meeting:
            winner = meeting[0]
            _reduce_elected(count, winner, q, discrete)
            count.remove(winner)
            seated.append(winner)
            rounds.append(StvRound(snapshot, Action.ELECT, (winner,), tuple(count.weights)))
        else:
            low = min(count.support[c] for c in count.working)
            loser = max(c for c in count.working if count.support[c] == low)
            count.remove(loser)
            rounds.append(StvRound(snapshot, Action.ELIMINATE, (loser,), tuple(count.weights)))
    return Committee(frozenset(seated), tuple(seated)), StvTrace(tuple(rounds))


def stv_all_outcomes(
    profile: Profile,
    config: StvConfig | None = None,
    max_candidates: int = 12,
) -> set[frozenset[Candidate]]:
    """Every committee reachable under some resolution of every tie.

    Branches over each quota-meeting candidate when at least one exists, and
    over each lowest-support candidate otherwise.  Desk scale only; profiles
    with more than ``max_candidates`` candidates are rejected.
    """
    q, discrete = _resolve_config(profile, config)
    if profile.m > max_candidates:
        raise ValueError(
            f"profile has {profile.m} > {max_candidates} candidates; "
            "use the deterministic stv() instead"
        )
    k = profile.k
    outcomes: set[frozenset[Candidate]] = set()
    seen: set = set()

    def explore(count: _Count, seated: frozenset[Candidate]) -> None:
        while True:
            if len(seated) == k:
                outcomes.add(seated)
                return
            if len(seated) + len(count.working) == k:
                outcomes.add(seated | count.working)
                return
            key = (seated, frozenset(count.working), tuple(count.weights))
            if key in seen:
                return
            seen.add(key)
            meeting = [c for c in count.working if support_meets(count.support[c], q)]
            if meeting:
                branches = meeting
                elect = True
            else:
                low = min(count.support[c] for c in count.working)
                branches = [c for c in count.working if count.support[c] == low]
                elect = False
            if len(branches) == 1:
                c = branches[0]
                if elect:
                    _reduce_elected(count, c, q, discrete)
                    seated = seated | {c}
                count.remove(c)
                continue
            for c in branches:
                branch = count.copy()
                new_seated = seated
                if elect:
                    _reduce_elected(branch, c, q, discrete)
                    new_seated = seated | {c}
                branch.remove(c)
                explore(branch, new_seated)
            return

    explore(_Count(profile, initial_weights(profile.n)), frozenset())
    return outcomes
