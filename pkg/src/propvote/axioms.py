"""Testers for the proportional-representation axioms.

The strict-profile testers (``check_psc``, ``check_weak_psc``) run in
polynomial time by enumerating ballot prefixes.  The weak-order testers
(``check_generalised_psc``, ``check_generalised_weak_psc``) and the
approval tester (``check_pjr``) decide a coNP-complete question and run a
desk-scale brute force with explicit size bounds.

Every VIOLATED verdict carries a witness (the demanding voter coalition,
the supported candidate set and the binding demand multiplier) that
re-checks as a genuine violation straight from the definition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import Candidate, Committee, Profile, is_dichotomous, is_strict, jth_preferred, rank_of
from .quota import Quota, max_multiple, scaled, support_meets, threshold_leq


@dataclass(frozen=True)
class SolidCoalitionRecord:
    """A supported candidate set paired with the largest voter set backing it."""

    supported: frozenset[Candidate]
    voters: tuple[int, ...]
    generalised: bool = False


@dataclass(frozen=True)
class Witness:
    voters: tuple[int, ...]
    supported: tuple[Candidate, ...]
    ell: int
    detail: str


@dataclass(frozen=True)
class Verdict:
    axiom: str
    holds: bool
    witness: Witness | None = None

    @property
    def status(self) -> str:
        return "HOLDS" if self.holds else "VIOLATED"


def _members(committee) -> frozenset[Candidate]:
    if isinstance(committee, Committee):
        return committee.members
    return frozenset(committee)


def _check_committee(profile: Profile, committee) -> frozenset[Candidate]:
    members = _members(committee)
    if not members <= profile.candidates:
        raise ValueError(f"committee members outside the candidate set: "
                         f"{sorted(members - profile.candidates)}")
    if len(members) != profile.k:
        raise ValueError(f"committee has {len(members)} members, expected k={profile.k}")
    return members


def maximal_solid_coalitions(profile: Profile) -> list[SolidCoalitionRecord]:
    """All (prefix set, voter set) pairs where the voter set is the maximal
    solid coalition for that set.  Strict profiles only; under strict orders
    a voter solidly supports C' exactly when C' is their top-|C'| set, so at
    most n*m distinct records exist and they carry every binding demand.
    """
    if not is_strict(profile):
        raise ValueError("solid-coalition prefix enumeration requires a strict profile")
    flats = [v.flattened for v in profile.voters]
    records: dict[frozenset[Candidate], list[int]] = {}
    for size in range(1, profile.m + 1):
        for v, flat in enumerate(flats):
            records.setdefault(frozenset(flat[:size]), []).append(v)
    out = [
        SolidCoalitionRecord(cset, tuple(voters))
        for cset, voters in records.items()
    ]
    out.sort(key=lambda r: (len(r.supported), sorted(r.supported)))
    return out


def check_psc(profile: Profile, committee, q: Quota) -> Verdict:
    """Proportionality for solid coalitions at quota ``q`` (strict profiles).

    Every solid coalition backed by at least l quotas of voters must see
    min{l, |C'|} of its candidates seated.
    """
    members = _check_committee(profile, committee)
    for rec in maximal_solid_coalitions(profile):
        ell = max_multiple(len(rec.voters), q)
        need = min(ell, len(rec.supported))
        have = len(members & rec.supported)
        if have < need:
            return Verdict(
                "psc", False,
                Witness(rec.voters, tuple(sorted(rec.supported)), ell,
                        f"{have} seated from the supported set, {need} required"),
            )
    return Verdict("psc", True)


def check_weak_psc(profile: Profile, committee, q: Quota) -> Verdict:
    """Weak variant: only coalitions whose supported set fits inside their
    demand are binding, and then the whole supported set must be seated."""
    members = _check_committee(profile, committee)
    for rec in maximal_solid_coalitions(profile):
        ell = max_multiple(len(rec.voters), q)
        if ell >= len(rec.supported) and not rec.supported <= members:
            missing = sorted(rec.supported - members)
            return Verdict(
                "weak-psc", False,
                Witness(rec.voters, tuple(sorted(rec.supported)), ell,
                        f"supported set not fully seated, missing {missing}"),
            )
    return Verdict("weak-psc", True)


def maximal_generalised_coalition(profile: Profile, supported) -> tuple[int, ...]:
    """All voters who weakly prefer every member of ``supported`` to every
    non-member."""
    cset = frozenset(supported)
    if not cset or not cset <= profile.candidates:
        raise ValueError("supported set must be a nonempty subset of the candidates")
    rest = profile.candidates - cset
    out = []
    for i, order in enumerate(profile.voters):
        worst_in = max(rank_of(order, c) for c in cset)
        best_out = min((rank_of(order, c) for c in rest), default=profile.m + 1)
        if worst_in <= best_out:
            out.append(i)
    return tuple(out)


def _qualifying_winners(profile: Profile, members: frozenset[Candidate],
                        voter: int, depth: int) -> frozenset[Candidate]:
    """Committee members the voter finds at least as good as their depth-th
    preferred candidate."""
    order = profile.voters[voter]
    cutoff = rank_of(order, jth_preferred(order, depth))
    return frozenset(w for w in members if rank_of(order, w) <= cutoff)


def _check_generalised(profile: Profile, committee, q: Quota,
                       weak: bool, max_candidates: int) -> Verdict:
    members = _check_committee(profile, committee)
    if profile.m > max_candidates:
        raise ValueError(
            f"profile has {profile.m} > {max_candidates} candidates; "
            "generalised testing is brute force and desk scale only"
        )
    name = "weak-generalised-psc" if weak else "generalised-psc"
    member_list = sorted(members)
    cands = profile.sorted_candidates
    for size in range(1, profile.m + 1):
        for combo in itertools.combinations(cands, size):
            cset = frozenset(combo)
            coalition = maximal_generalised_coalition(profile, cset)
            if not coalition:
                continue
            quals = {i: _qualifying_winners(profile, members, i, size) for i in coalition}
            justifiable = max_multiple(len(coalition), q)
            if weak:
                demands = [size] if justifiable >= size else []
            else:
                demands = range(1, min(size, justifiable) + 1)
            for d in demands:
                # A violation at demand d needs a sub-coalition worth d quotas
                # whose qualifying winners all fit in a set of d-1 members.
                for shield in itertools.combinations(member_list, min(d - 1, profile.k)):
                    cover = frozenset(shield)
                    crowd = tuple(i for i in coalition if quals[i] <= cover)
                    if support_meets(len(crowd), scaled(q, d)):
                        return Verdict(
                            name, False,
                            Witness(crowd, combo, d,
                                    f"only {sorted(cover)} can represent the coalition, "
                                    f"{d} qualifying members required"),
                        )
    return Verdict(name, True)


def check_generalised_psc(profile: Profile, committee, q: Quota,
                          max_candidates: int = 20) -> Verdict:
    """Generalised PSC for weak orders: every generalised solid coalition
    worth l quotas must see min{l, |C'|} committee members that some
    coalition voter ranks at least as high as their |C'|-th preference.

    Brute force over supported sets and demand levels; sound for arbitrary
    sub-coalitions of each maximal coalition (the question is coNP-complete,
    so no polynomial shortcut is attempted).
    """
    return _check_generalised(profile, committee, q, weak=False,
                              max_candidates=max_candidates)


def check_generalised_weak_psc(profile: Profile, committee, q: Quota,
                               max_candidates: int = 20) -> Verdict:
    """Weak variant: only demands with l >= |C'| bind, requiring |C'|
    qualifying committee members."""
    return _check_generalised(profile, committee, q, weak=True,
                              max_candidates=max_candidates)


def check_pjr(profile: Profile, committee, max_voters: int = 20) -> Verdict:
    """Proportional justified representation for dichotomous profiles.

    Brute force over voter subsets in Gray-code order, maintaining
    per-candidate approval counts incrementally.  Voters indifferent between
    all candidates never join a violating group.
    """
    members = _check_committee(profile, committee)
    if not is_dichotomous(profile):
        raise ValueError("PJR is defined for dichotomous profiles")
    n, k = profile.n, profile.k
    eligible = [i for i, v in enumerate(profile.voters) if len(v.classes) == 2]
    if len(eligible) > max_voters:
        raise ValueError(
            f"{len(eligible)} approval voters exceed the brute-force bound {max_voters}"
        )
    approvals = {i: profile.voters[i].classes[0] for i in eligible}
    cands = profile.sorted_candidates
    counts = {c: 0 for c in cands}
    chosen: set[int] = set()

    def scan() -> Verdict | None:
        size = len(chosen)
        if not size:
            return None
        ell_cap = max_multiple(size, Quota(Fraction(n, k)))
        if ell_cap == 0:
            return None
        inter = sum(1 for c in cands if counts[c] == size)
        covered = sum(1 for c in members if counts[c] > 0)
        ell = min(ell_cap, inter)
        if ell > covered:
            return Verdict(
                "pjr", False,
                Witness(tuple(sorted(chosen)),
                        tuple(c for c in cands if counts[c] == size), ell,
                        f"jointly approved {inter} candidates but only "
                        f"{covered} approved members seated"),
            )
        return None

    for step in range(1, 1 << len(eligible)):
        flip = eligible[(step & -step).bit_length() - 1]
        if flip in chosen:
            chosen.discard(flip)
            delta = -1
        else:
            chosen.add(flip)
            delta = 1
        for c in approvals[flip]:
            counts[c] += delta
        verdict = scan()
        if verdict is not None:
            return verdict
    return Verdict("pjr", True)


@dataclass(frozen=True)
class ImplicationEdge:
    name: str
    premise: str
    conclusion: str
    premise_holds: bool
    conclusion_holds: bool

    @property
    def breached(self) -> bool:
        return self.premise_holds and not self.conclusion_holds


def check_implications(profile: Profile, committee,
                       quotas: dict[str, Quota]) -> list[ImplicationEdge]:
    """Evaluate the implication lattice between the axiom testers on one
    concrete (profile, committee) pair.

    ``quotas`` maps labels to quota objects; for every pair q <= q' (by
    effective threshold) each axiom satisfied at q must also be satisfied at
    q', and the strength edges (generalised -> plain -> weak, generalised
    Hare -> PJR) must never be breached.  A breached edge indicates a tester
    bug, not a property of the committee.
    """
    strict = is_strict(profile)
    dichotomous = is_dichotomous(profile)
    verdicts: dict[str, bool] = {}

    def run(kind: str, label: str, q: Quota) -> bool:
        key = f"{kind}@{label}"
        if key not in verdicts:
            if kind == "psc":
                verdicts[key] = check_psc(profile, committee, q).holds
            elif kind == "weak-psc":
                verdicts[key] = check_weak_psc(profile, committee, q).holds
            elif kind == "gpsc":
                verdicts[key] = check_generalised_psc(profile, committee, q).holds
            elif kind == "weak-gpsc":
                verdicts[key] = check_generalised_weak_psc(profile, committee, q).holds
            else:
                raise ValueError(kind)
        return verdicts[key]

    edges: list[ImplicationEdge] = []

    def edge(name, premise, conclusion, p, c):
        edges.append(ImplicationEdge(name, premise, conclusion, p, c))

    kinds = ["gpsc", "weak-gpsc"] + (["psc", "weak-psc"] if strict else [])
    for label, q in quotas.items():
        gp = run("gpsc", label, q)
        gw = run("weak-gpsc", label, q)
        edge("generalised implies weak generalised", f"gpsc@{label}", f"weak-gpsc@{label}", gp, gw)
        if strict:
            p = run("psc", label, q)
            w = run("weak-psc", label, q)
            edge("psc implies weak psc", f"psc@{label}", f"weak-psc@{label}", p, w)
            edge("generalised collapses to psc", f"gpsc@{label}", f"psc@{label}", gp, p)
            edge("weak generalised collapses to weak psc",
                 f"weak-gpsc@{label}", f"weak-psc@{label}", gw, w)
        if dichotomous and q.value == Fraction(profile.n, profile.k):
            pjr = check_pjr(profile, committee).holds
            edge("generalised Hare implies PJR", f"gpsc@{label}", "pjr", gp, pjr)
    for (la, qa), (lb, qb) in itertools.permutations(quotas.items(), 2):
        if la != lb and threshold_leq(qa, qb):
            for kind in kinds:
                edge(f"{kind} monotone in quota", f"{kind}@{la}", f"{kind}@{lb}",
                     run(kind, la, qa), run(kind, lb, qb))
    return edges
