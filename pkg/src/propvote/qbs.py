"""The quota Borda system on strict complete linear orders.

For prefix depths j = 1..m, voters are partitioned into classes sharing an
identical top-j candidate set.  A class of size s solidly supporting the set
C' is owed min{l, |C'|} seats from C', where l is the largest integer with
l quotas of support contained in s.  While a class's demand exceeds the
seats already filled from its set, the unseated candidate of C' with the
highest Borda score among the class's own voters is seated (ties broken
lexicographically).  Demands are checked against the committee as it stands,
so earlier seatings count toward later demands, and the run stops the moment
the committee is full.
"""

from __future__ import annotations

from fractions import Fraction

from .core import Candidate, Committee, Profile, is_strict, rank_of
from .quota import Quota, QuotaMode, default_quota, max_multiple


def borda_score(profile: Profile, c: Candidate) -> int:
    """Sum over voters of (m - rank of ``c``); strict profiles only."""
    if not is_strict(profile):
        raise ValueError("Borda scores require a strict profile")
    m = profile.m
    return sum(m - rank_of(v, c) for v in profile.voters)


def _coalition_borda(profile: Profile, voters: list[int], c: Candidate) -> int:
    m = profile.m
    return sum(m - rank_of(profile.voters[v], c) for v in voters)


def qbs(profile: Profile, quota: Quota | None = None) -> Committee:
    """Run the quota Borda system; the quota must exceed n/(k+1)."""
    if not is_strict(profile):
        raise ValueError("QBS requires a strict profile")
    n, m, k = profile.n, profile.m, profile.k
    q = quota if quota is not None else default_quota(n, k, m)
    base = Fraction(n, k + 1)
    above = q.value > base or (q.mode is QuotaMode.STRICT and q.value == base)
    if not above:
        raise ValueError(f"QBS quota must exceed n/(k+1) = {base}")

    flats = [v.flattened for v in profile.voters]
    seated: list[Candidate] = []
    seated_set: set[Candidate] = set()

    for j in range(1, m + 1):
        if len(seated) == k:
            break
        groups: dict[frozenset[Candidate], list[int]] = {}
        for v, flat in enumerate(flats):
            groups.setdefault(frozenset(flat[:j]), []).append(v)
        for cset, vlist in sorted(groups.items(), key=lambda kv: kv[1][0]):
            demand = min(max_multiple(len(vlist), q), len(cset))
            while len(seated) < k and demand > len(seated_set & cset):
                pick = min(
                    (c for c in cset if c not in seated_set),
                    key=lambda c: (-_coalition_borda(profile, vlist, c), c),
                )
                seated.append(pick)
                seated_set.add(pick)
            if len(seated) == k:
                break

    # Only reachable for user quotas above Hare, where no coalition can
    # demand all k seats: top up by overall Borda score.
    while len(seated) < k:
        pick = min(
            (c for c in profile.candidates if c not in seated_set),
            key=lambda c: (-borda_score(profile, c), c),
        )
        seated.append(pick)
        seated_set.add(pick)
    return Committee(frozenset(seated), tuple(seated))
