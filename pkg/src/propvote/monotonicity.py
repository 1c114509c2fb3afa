"""Reinforcement enumeration and candidate-monotonicity checkers.

A reinforcement moves one candidate weakly upward in one voter's order while
leaving every relation between other candidates untouched, and must strictly
cross over at least one candidate that was previously ranked at least as
high.  The checkers run a rule, then exhaustively reinforce each winner in
each voter's ballot (filtered per variant) and re-run the rule:

* cm:    the reinforced winner must stay seated.
* rrcm:  like cm, restricted to reinforcements that keep every other
         winner's rank in that voter's order unchanged.
* nccm:  like cm, restricted to reinforcements that never cross another
         winner.
* wcm:   some originally seated candidate must stay seated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .core import Candidate, Committee, Profile, WeakOrder, rank_of

VARIANTS = ("cm", "rrcm", "nccm", "wcm")


@dataclass(frozen=True)
class Reinforcement:
    voter: int
    candidate: Candidate
    before: WeakOrder
    after: WeakOrder
    crossed: frozenset[Candidate]


@dataclass(frozen=True)
class MonotonicityWitness:
    variant: str
    reinforcements: tuple[Reinforcement, ...]
    committee_before: Committee
    committee_after: Committee


@dataclass(frozen=True)
class MonotonicityVerdict:
    variant: str
    holds: bool
    witness: MonotonicityWitness | None = None

    @property
    def status(self) -> str:
        return "HOLDS" if self.holds else "VIOLATED"


def _reinforced_orders(order: WeakOrder, c: Candidate) -> Iterator[tuple[WeakOrder, frozenset]]:
    """All weak orders obtained by moving ``c`` weakly upward with at least
    one strict crossover, other relations fixed.  Yields (order, crossed).

    Validity of a placement: no candidate that was strictly below ``c`` may
    rise to a tie or above (so the strictly-below set only grows), and no
    candidate may newly dominate ``c`` (so the new strict dominators are a
    subset of the old ones).  The crossed set is what drops from weakly-above
    to strictly-below; it must be nonempty.
    """
    if c not in order.candidates:
        raise ValueError(f"unknown candidate {c!r}")
    base = [cls - {c} for cls in order.classes if cls - {c}]
    rank_c = rank_of(order, c)
    old_dom = frozenset(d for d in order.candidates
                        if d != c and rank_of(order, d) < rank_c)
    old_upper = frozenset(d for d in order.candidates
                          if d != c and rank_of(order, d) <= rank_c)
    old_below = frozenset(d for d in order.candidates if rank_of(order, d) > rank_c)

    for t in range(len(base) + 1):
        dominators = frozenset().union(*base[:t]) if t else frozenset()
        if not dominators <= old_dom:
            break
        below = frozenset().union(*base[t:]) if t < len(base) else frozenset()
        crossed = below & old_upper
        if below >= old_below and crossed:
            yield WeakOrder((*base[:t], frozenset({c}), *base[t:])), crossed
        if t < len(base):
            below_merge = frozenset().union(*base[t + 1:]) if t + 1 < len(base) else frozenset()
            crossed = below_merge & old_upper
            if below_merge >= old_below and crossed:
                yield WeakOrder((*base[:t], base[t] | {c}, *base[t + 1:])), crossed


def enumerate_reinforcements(profile: Profile, voter: int, c: Candidate) -> list[Reinforcement]:
    """All reinforcements of ``c`` available to ``voter``, in a canonical
    top-down placement order."""
    order = profile.voters[voter]
    out = []
    for after, crossed in _reinforced_orders(order, c):
        out.append(Reinforcement(voter, c, order, after, crossed))
    return out


def _with_ballot(profile: Profile, changes: dict[int, WeakOrder]) -> Profile:
    voters = tuple(changes.get(i, v) for i, v in enumerate(profile.voters))
    return Profile(profile.candidates, voters, profile.k)


def _admissible(r: Reinforcement, variant: str, winners: frozenset[Candidate]) -> bool:
    others = winners - {r.candidate}
    if variant == "rrcm":
        return all(rank_of(r.after, w) == rank_of(r.before, w) for w in others)
    if variant == "nccm":
        return not (r.crossed & others)
    return True


def check_monotonicity(
    rule: Callable[[Profile], Committee],
    profile: Profile,
    variant: str,
    pair_identical_voters: bool = False,
    strict_only: bool = False,
) -> MonotonicityVerdict:
    """Exhaustive reinforcement search against a deterministic rule.

    With ``pair_identical_voters`` the same reinforcement is additionally
    applied to two voters holding identical ballots at once (some published
    counterexamples need the paired move).  ``strict_only`` drops
    reinforcements that introduce ties, for rules defined only on linear
    orders.  The first violation found, in canonical winner/voter/placement
    order, is returned as the witness.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    before = rule(profile)
    winners = before.members

    def admissible(r: Reinforcement) -> bool:
        if strict_only and any(len(cls) > 1 for cls in r.after.classes):
            return False
        return _admissible(r, variant, winners)

    def violated(after_committee: Committee, candidate: Candidate) -> bool:
        if variant == "wcm":
            return not (winners & after_committee.members)
        return candidate not in after_committee.members

    seats = before.election_order or tuple(sorted(winners))
    for c in seats:
        for v in range(profile.n):
            for r in enumerate_reinforcements(profile, v, c):
                if not admissible(r):
                    continue
                after = rule(_with_ballot(profile, {v: r.after}))
                if violated(after, c):
                    return MonotonicityVerdict(
                        variant, False,
                        MonotonicityWitness(variant, (r,), before, after),
                    )
        if pair_identical_voters:
            for v1 in range(profile.n):
                for v2 in range(v1 + 1, profile.n):
                    if profile.voters[v1] != profile.voters[v2]:
                        continue
                    for r in enumerate_reinforcements(profile, v1, c):
                        if not admissible(r):
                            continue
                        twin = Reinforcement(v2, c, r.before, r.after, r.crossed)
                        after = rule(_with_ballot(profile, {v1: r.after, v2: r.after}))
                        if violated(after, c):
                            return MonotonicityVerdict(
                                variant, False,
                                MonotonicityWitness(variant, (r, twin), before, after),
                            )
    return MonotonicityVerdict(variant, True)
