"""The expanding approvals rule.

Seats are filled one at a time.  An approval depth ``j`` starts at 1; each
voter approves every candidate at least as preferred as their ``j``-th most
preferred one.  Whenever some unelected candidate's weighted approval support
meets the quota, the quota-meeting candidate highest in a fixed priority
order is seated and its supporters are uniformly rescaled so their total
weight drops by exactly the quota value; otherwise ``j`` is incremented.

The default priority order is rank-maximal: candidates compare by their
per-rank support-count vectors, lexicographically, computed once from the
initial ballots and never updated.

Arithmetic is exact throughout.  Internally all weights are integer
numerators over one shared denominator, so the inner loops never pay for
fraction normalization; exact :class:`fractions.Fraction` values surface in
traces and results.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

from .core import Candidate, Committee, Profile, initial_weights
from .quota import Quota, QuotaMode, admissible, default_quota, support_meets

RANK_MAXIMAL = "rank-maximal"
MAX_SUPPORT = "max-support"


def rank_vector(profile: Profile, c: Candidate) -> tuple[int, ...]:
    """Entry j-1 counts the voters holding ``c`` in their j-th class."""
    counts = [0] * profile.m
    for v in profile.voters:
        counts[v._ranks[c] - 1] += 1
    return tuple(counts)


def rank_maximal_order(profile: Profile) -> tuple[Candidate, ...]:
    """Candidates sorted by lexicographically greater rank vector, ties
    broken lexicographically by candidate id.

    The order depends only on the initial ballots, not on voting weights, and
    is never updated during a run.
    """
    vectors = {c: rank_vector(profile, c) for c in profile.candidates}
    return tuple(
        sorted(profile.candidates, key=lambda c: (tuple(-x for x in vectors[c]), c))
    )


@dataclass(frozen=True)
class EarConfig:
    """Options for :func:`ear`.

    priority: ``"rank-maximal"`` (default), ``"max-support"`` (seat the
    quota-meeting candidate with the highest weighted support, falling back
    to the rank-maximal order), or an explicit candidate sequence.
    partial_lists: never approve a voter's implicit tail class; if seats
    remain once no candidate can reach the quota, fill them by priority.
    trace: record per-round supports and weights (disable for large runs).
    allow_any_quota: skip the admissible-interval check on the quota.
    """

    quota: Quota | None = None
    priority: str | Sequence[Candidate] = RANK_MAXIMAL
    partial_lists: bool = False
    trace: bool = True
    allow_any_quota: bool = False


@dataclass(frozen=True)
class EarRound:
    """One seating: the approval depth, the supports that justified the
    seating, the candidate seated, and all voter weights afterwards."""

    depth: int
    supports: dict[Candidate, Fraction]
    elected: Candidate
    weights_after: tuple[Fraction, ...]


@dataclass(frozen=True)
class EarTrace:
    rounds: tuple[EarRound, ...]
    filled_by_priority: tuple[Candidate, ...] = field(default=())


def reweight_supporters(
    weights: Sequence[Fraction], supporters: Sequence[int], q: Quota
) -> list[Fraction]:
    """Scale each supporter's weight by (T - q)/T where T is the supporters'
    total, decreasing their total weight by exactly the quota value.

    Raises if T does not itself meet the quota.
    """
    total = sum((weights[v] for v in supporters), Fraction(0))
    if not support_meets(total, q):
        raise ValueError(f"supporter weight {total} does not meet quota {q.value}")
    factor = (total - q.value) / total
    out = list(weights)
    for v in supporters:
        out[v] *= factor
    return out


def _resolve_priority(profile: Profile, config: EarConfig) -> tuple[tuple[Candidate, ...], bool]:
    prio = config.priority
    if isinstance(prio, str):
        if prio == RANK_MAXIMAL:
            return rank_maximal_order(profile), False
        if prio == MAX_SUPPORT:
            return rank_maximal_order(profile), True
        raise ValueError(f"unknown priority mode {prio!r}")
    order = tuple(prio)
    if frozenset(order) != profile.candidates or len(order) != profile.m:
        raise ValueError("priority order must be a permutation of the candidate set")
    return order, False


class _ApprovalState:
    """Expanding approval sets over weights kept as integers times 1/den.

    ``num[v] / den`` is voter v's exact weight; ``support[c]`` is the integer
    numerator of candidate c's weighted approval.  Rescaling supporters by
    (T - t)/T multiplies their numerators by (T_num - t_num) and everyone
    else's, together with ``den``, by T_num, so no gcd is ever taken in the
    round loop.
    """

    def __init__(self, profile: Profile, base_den: int, partial_lists: bool):
        self.profile = profile
        self.den = base_den
        self.num = [base_den] * profile.n
        if partial_lists:
            self.usable = [v.listed_classes for v in profile.voters]
        else:
            self.usable = [v.classes for v in profile.voters]
        self.cls_idx = [0] * profile.n
        self.covered = [0] * profile.n
        self.approvals: list[list[Candidate]] = [[] for _ in range(profile.n)]
        self.support: dict[Candidate, int] = {c: 0 for c in profile.candidates}

    def expand_to(self, j: int) -> None:
        for v in range(self.profile.n):
            while self.covered[v] < j and self.cls_idx[v] < len(self.usable[v]):
                cls = self.usable[v][self.cls_idx[v]]
                weight = self.num[v]
                for c in cls:
                    self.approvals[v].append(c)
                    self.support[c] += weight
                self.covered[v] += len(cls)
                self.cls_idx[v] += 1

    def elect(self, winner: Candidate, threshold_num: int) -> None:
        """Reduce the winner's supporters' total weight by threshold_num/den."""
        t_num = self.support[winner]
        f_num = t_num - threshold_num
        f_den = t_num
        supporters = set()
        deltas: dict[Candidate, int] = {}
        for v in range(self.profile.n):
            approved = self.approvals[v]
            if winner in approved:
                supporters.add(v)
                dv = self.num[v] * (f_num - f_den)
                for c in approved:
                    deltas[c] = deltas.get(c, 0) + dv
        for c in self.support:
            self.support[c] = self.support[c] * f_den + deltas.get(c, 0)
        for v in range(self.profile.n):
            self.num[v] *= f_num if v in supporters else f_den
        self.den *= f_den

    def weight_fractions(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.num)

    def support_fractions(self) -> dict[Candidate, Fraction]:
        return {c: Fraction(x, self.den) for c, x in self.support.items()}


def _meets(support_num: int, threshold_num: int, mode: QuotaMode) -> bool:
    if mode is QuotaMode.INCLUSIVE:
        return support_num >= threshold_num
    return support_num > threshold_num


def ear(profile: Profile, config: EarConfig | None = None) -> tuple[Committee, EarTrace]:
    """Run the expanding approvals rule; returns the committee and, unless
    tracing is disabled, a full per-round trace (supports snapshot and exact
    weights after each seat)."""
    cfg = config or EarConfig()
    n, m, k = profile.n, profile.m, profile.k
    q = cfg.quota if cfg.quota is not None else default_quota(n, k, m)
    if not cfg.allow_any_quota and not admissible(q, n, k):
        raise ValueError(
            f"quota {q.value} ({q.mode.value}) outside (n/(k+1), n/k] = "
            f"({Fraction(n, k + 1)}, {Fraction(n, k)}]; pass allow_any_quota to override"
        )
    order, by_support = _resolve_priority(profile, cfg)
    pos = {c: i for i, c in enumerate(order)}

    state = _ApprovalState(profile, q.value.denominator, cfg.partial_lists)
    quota_num = q.value.numerator  # quota value scaled by the running denominator
    j = 1
    state.expand_to(j)
    elected: list[Candidate] = []
    elected_set: set[Candidate] = set()
    rounds: list[EarRound] = []

    while len(elected) < k:
        meeting = [
            c for c in profile.candidates
            if c not in elected_set and _meets(state.support[c], quota_num, q.mode)
        ]
        if not meeting:
            if j >= m:
                if cfg.partial_lists:
                    break
                if cfg.allow_any_quota:
                    raise ValueError("quota exhausts voter weight before the committee is full")
                raise AssertionError("depth exceeded m with an admissible quota")
            j += 1
            state.expand_to(j)
            continue
        if by_support:
            winner = min(meeting, key=lambda c: (-state.support[c], pos[c]))
        else:
            winner = min(meeting, key=lambda c: pos[c])
        snapshot = state.support_fractions() if cfg.trace else {}
        scale = state.support[winner]
        state.elect(winner, quota_num)
        quota_num *= scale
        elected.append(winner)
        elected_set.add(winner)
        if cfg.trace:
            rounds.append(EarRound(j, snapshot, winner, state.weight_fractions()))

    fills: tuple[Candidate, ...] = ()
    if len(elected) < k:
        fills = tuple(c for c in order if c not in elected_set)[: k - len(elected)]
        elected.extend(fills)
    return (
        Committee(frozenset(elected), tuple(elected)),
        EarTrace(tuple(rounds), fills),
    )


def ear_budgeted(
    profile: Profile,
    costs: Mapping[Candidate, Fraction | int],
    budget: Fraction | int,
) -> tuple[Candidate, ...]:
    """Budgeted variant: candidate c is seatable while its cost still fits the
    budget and its approval support reaches (n/B) * cost(c); seating scales
    its supporters so their total drops by exactly that threshold.

    Stops once no unseated candidate fits the remaining budget; with unit
    costs and B = k this reproduces the rule with the Hare quota.  May return
    fewer candidates than would fill the budget.
    """
    budget = Fraction(budget)
    if budget <= 0:
        raise ValueError("budget must be positive")
    cost = {c: Fraction(costs[c]) for c in profile.candidates}
    for c, x in cost.items():
        if x <= 0:
            raise ValueError(f"cost of {c} must be positive")
        if x > budget:
            raise ValueError(f"cost of {c} exceeds the budget")
    per_unit = Fraction(profile.n) / budget
    thresholds = {c: per_unit * cost[c] for c in profile.candidates}

    order = rank_maximal_order(profile)
    pos = {c: i for i, c in enumerate(order)}
    base = lcm(*(t.denominator for t in thresholds.values()))
    state = _ApprovalState(profile, base, partial_lists=False)
    tnum = {c: t.numerator * (base // t.denominator) for c, t in thresholds.items()}
    j = 1
    state.expand_to(j)
    chosen: list[Candidate] = []
    spent = Fraction(0)

    while True:
        affordable = [
            c for c in profile.candidates
            if c not in chosen and spent + cost[c] <= budget
        ]
        if not affordable:
            break
        meeting = [c for c in affordable if state.support[c] >= tnum[c]]
        if not meeting:
            if j >= profile.m:
                break
            j += 1
            state.expand_to(j)
            continue
        winner = min(meeting, key=lambda c: pos[c])
        scale = state.support[winner]
        state.elect(winner, tnum[winner])
        tnum = {c: t * scale for c, t in tnum.items()}
        chosen.append(winner)
        spent += cost[winner]
    return tuple(chosen)
