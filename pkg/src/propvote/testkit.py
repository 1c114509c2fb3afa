"""Seeded profile generation and independent oracles for the property suites.

The generator is pinned to SplitMix64 so any reimplementation, in any
language, can reproduce a failing profile bit for bit from its seed.  Every
derived draw is documented next to its use: bounded integers come from
``next_u64() % bound``, permutations from a Fisher-Yates shuffle drawing
swap indices high-to-low, and Bernoulli draws compare ``next_u64()`` against
``floor(p * 2**64)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Candidate, Profile, WeakOrder, approval_set_at_depth, is_strict

_MASK = (1 << 64) - 1

IMPARTIAL_STRICT = "impartial-strict"
RANDOM_WEAK = "random-weak"
DICHOTOMOUS = "dichotomous"


class SplitMix64:
    """SplitMix64: 64-bit state, gamma 0x9E3779B97F4A7C15 (Steele et al.)."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform-ish integer in [0, bound) via the documented modulo map."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % bound


@dataclass(frozen=True)
class ProfileCulture:
    """A reproducible random-profile distribution.

    kind: ``impartial-strict`` (uniform permutations), ``random-weak``
    (random ordered partitions with at most ``max_classes`` classes) or
    ``dichotomous`` (independent approvals with probability
    ``approval_prob``, collapsed to two classes).
    """

    kind: str
    n: int
    m: int
    k: int
    seed: int
    max_classes: int = 3
    approval_prob: Fraction = Fraction(1, 2)


def candidate_labels(m: int) -> tuple[Candidate, ...]:
    """``c1 .. cm``, zero-padded so lexicographic equals numeric order."""
    width = len(str(m))
    return tuple(f"c{i:0{width}d}" for i in range(1, m + 1))


def random_profile(culture: ProfileCulture) -> Profile:
    """Draw a profile; the same culture always yields the identical profile."""
    rng = SplitMix64(culture.seed)
    labels = candidate_labels(culture.m)
    universe = frozenset(labels)
    voters: list[WeakOrder] = []
    for _ in range(culture.n):
        if culture.kind == IMPARTIAL_STRICT:
            perm = list(labels)
            for i in range(culture.m - 1, 0, -1):
                j = rng.below(i + 1)
                perm[i], perm[j] = perm[j], perm[i]
            voters.append(WeakOrder(tuple(frozenset({c}) for c in perm)))
        elif culture.kind == RANDOM_WEAK:
            count = 1 + rng.below(min(culture.max_classes, culture.m))
            buckets: list[set[Candidate]] = [set() for _ in range(count)]
            for c in labels:
                buckets[rng.below(count)].add(c)
            classes = tuple(frozenset(b) for b in buckets if b)
            voters.append(WeakOrder(classes))
        elif culture.kind == DICHOTOMOUS:
            threshold = (culture.approval_prob * (1 << 64)).__floor__()
            approved = frozenset(c for c in labels if rng.next_u64() < threshold)
            if not approved or approved == universe:
                voters.append(WeakOrder((universe,)))
            else:
                voters.append(WeakOrder((approved, universe - approved)))
        else:
            raise ValueError(f"unknown culture kind {culture.kind!r}")
    return Profile(universe, tuple(voters), culture.k)


def bucklin_tally(profile: Profile) -> tuple[int, dict[Candidate, int], tuple[Candidate, ...]]:
    """Smallest depth at which some candidate's unweighted approval count
    exceeds n/2, the counts at that depth, and every candidate over the bar.

    Independent single-winner oracle: counts raw ballots directly and never
    touches voting weights or quota machinery.
    """
    if not is_strict(profile):
        raise ValueError("the Bucklin oracle expects a strict profile")
    half = Fraction(profile.n, 2)
    for depth in range(1, profile.m + 1):
        counts = {c: 0 for c in profile.candidates}
        for v in profile.voters:
            for c in approval_set_at_depth(v, depth):
                counts[c] += 1
        over = tuple(c for c in profile.sorted_candidates if counts[c] > half)
        if over:
            return depth, counts, over
    raise AssertionError("every candidate is approved at depth m; unreachable")


def bucklin_winner(profile: Profile) -> Candidate:
    """The majority-depth winner: first depth with a count beyond n/2,
    largest count at that depth, ties lexicographic."""
    _, counts, over = bucklin_tally(profile)
    best = max(counts[c] for c in over)
    return next(c for c in over if counts[c] == best)
