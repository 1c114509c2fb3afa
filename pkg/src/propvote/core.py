"""Domain types for candidates, weak-order ballots, profiles and committees.

Candidates are opaque string labels compared bytewise (plain ``str``
ordering).  A ballot is a weak order represented as an ordered tuple of
disjoint equivalence classes; candidates a voter does not list are
materialized into an implicit final class when the ballot is attached to a
profile, so every downstream consumer sees complete orders.

All voting weights and thresholds in this package are exact rationals
(:class:`fractions.Fraction`); no floating point enters any comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

Candidate = str


@dataclass(frozen=True)
class WeakOrder:
    """One voter's complete weak order as ordered equivalence classes.

    ``classes[0]`` is the most preferred class.  ``implicit_tail`` is True
    when the final class was materialized from candidates the voter omitted;
    a few rule variants treat such a class as never approved.
    """

    classes: tuple[frozenset[Candidate], ...]
    implicit_tail: bool = False

    def __post_init__(self):
        if not self.classes:
            raise ValueError("a weak order needs at least one equivalence class")
        seen: set[Candidate] = set()
        for cls in self.classes:
            if not cls:
                raise ValueError("equivalence classes must be nonempty")
            if cls & seen:
                raise ValueError(f"candidates repeated across classes: {sorted(cls & seen)}")
            seen |= cls

    @cached_property
    def _ranks(self) -> dict[Candidate, int]:
        return {c: j for j, cls in enumerate(self.classes, start=1) for c in cls}

    @cached_property
    def candidates(self) -> frozenset[Candidate]:
        return frozenset(self._ranks)

    @property
    def listed_classes(self) -> tuple[frozenset[Candidate], ...]:
        """Classes the voter wrote down (excludes a materialized tail)."""
        return self.classes[:-1] if self.implicit_tail else self.classes

    @cached_property
    def flattened(self) -> tuple[Candidate, ...]:
        """Candidates in preference order, lexicographic within each class."""
        out: list[Candidate] = []
        for cls in self.classes:
            out.extend(sorted(cls))
        return tuple(out)


def complete_order(
    listed: Sequence[Iterable[Candidate]],
    candidates: Iterable[Candidate],
) -> WeakOrder:
    """Build a :class:`WeakOrder` over ``candidates``, materializing the tail.

    ``listed`` holds the classes the voter expressed, best first.  Candidates
    not mentioned become one final implicit class.
    """
    universe = frozenset(candidates)
    classes = [frozenset(cls) for cls in listed]
    mentioned: set[Candidate] = set()
    for cls in classes:
        mentioned |= cls
    unknown = mentioned - universe
    if unknown:
        raise ValueError(f"ballot mentions unknown candidates: {sorted(unknown)}")
    rest = universe - mentioned
    if rest:
        if not classes:
            # an empty ballot is plain full indifference, not a hidden tail
            return WeakOrder((frozenset(rest),), implicit_tail=False)
        classes.append(frozenset(rest))
        return WeakOrder(tuple(classes), implicit_tail=True)
    return WeakOrder(tuple(classes), implicit_tail=False)


@dataclass(frozen=True)
class Profile:
    """A multiset of weak orders over a common candidate set, plus the
    committee size ``k``.

    Voters are an ordered list (by input-file position) purely so traces and
    reported witnesses are reproducible; no semantics attach to the order.
    """

    candidates: frozenset[Candidate]
    voters: tuple[WeakOrder, ...]
    k: int

    def __post_init__(self):
        if not self.candidates:
            raise ValueError("profile needs at least one candidate")
        for c in self.candidates:
            if not c:
                raise ValueError("candidate labels must be nonempty")
        if not 1 <= self.k <= len(self.candidates):
            raise ValueError(f"committee size k={self.k} out of range 1..{len(self.candidates)}")
        if not self.voters:
            raise ValueError("profile needs at least one voter")
        for i, v in enumerate(self.voters):
            if v.candidates != self.candidates:
                raise ValueError(f"voter {i} does not rank exactly the profile's candidates")

    @property
    def n(self) -> int:
        return len(self.voters)

    @property
    def m(self) -> int:
        return len(self.candidates)

    @cached_property
    def sorted_candidates(self) -> tuple[Candidate, ...]:
        return tuple(sorted(self.candidates))


@dataclass(frozen=True)
class Committee:
    """An elected committee plus the order in which seats were filled."""

    members: frozenset[Candidate]
    election_order: tuple[Candidate, ...] = field(default=())

    def __post_init__(self):
        if self.election_order and frozenset(self.election_order) != self.members:
            raise ValueError("election order inconsistent with committee members")

    def __contains__(self, c: Candidate) -> bool:
        return c in self.members

    def __len__(self) -> int:
        return len(self.members)


def make_profile(
    candidates: Iterable[Candidate],
    ballots: Iterable[Sequence[Iterable[Candidate]]],
    k: int,
) -> Profile:
    """Convenience constructor: ballots as lists of classes, tails implicit."""
    universe = frozenset(candidates)
    voters = tuple(complete_order(b, universe) for b in ballots)
    return Profile(universe, voters, k)


def initial_weights(n: int) -> list[Fraction]:
    """Unit starting weight for each of ``n`` voters."""
    return [Fraction(1)] * n


def rank_of(order: WeakOrder, c: Candidate) -> int:
    """Rank of ``c`` in ``order``: the 1-based index of its equivalence class.

    Candidates sharing a class share a rank.
    """
    try:
        return order._ranks[c]
    except KeyError:
        raise ValueError(f"unknown candidate {c!r}") from None


def jth_preferred(order: WeakOrder, j: int) -> Candidate:
    """The voter's ``j``-th most preferred candidate.

    Ties inside an equivalence class are broken lexicographically, giving an
    artificial linear order; ``j`` indexes into it (1-based).
    """
    flat = order.flattened
    if not 1 <= j <= len(flat):
        raise ValueError(f"depth {j} out of range 1..{len(flat)}")
    return flat[j - 1]


def approval_set_at_depth(order: WeakOrder, j: int) -> frozenset[Candidate]:
    """All candidates weakly preferred to the ``j``-th most preferred one.

    Equals the union of leading classes up to the first class at which the
    cumulative size reaches ``j``; whole classes enter together, so the
    result never depends on the within-class tie-break.
    """
    total = len(order.flattened)
    if not 1 <= j <= total:
        raise ValueError(f"depth {j} out of range 1..{total}")
    out: set[Candidate] = set()
    covered = 0
    for cls in order.classes:
        out |= cls
        covered += len(cls)
        if covered >= j:
            break
    return frozenset(out)


def is_strict(profile: Profile) -> bool:
    """True iff every equivalence class of every voter is a singleton."""
    return all(len(cls) == 1 for v in profile.voters for cls in v.classes)


def is_dichotomous(profile: Profile) -> bool:
    """True iff every voter has at most two equivalence classes."""
    return all(len(v.classes) <= 2 for v in profile.voters)
