from fractions import Fraction

import pytest

from conftest import load_fixture
from propvote import (ProfileCulture, SplitMix64, check_psc, hare_ear,
                      hare_quota, make_profile, parse_ballots, phragmen_first,
                      phragmen_first_all_outcomes, random_profile)


class TestPhragmenFirst:
    def test_split_singletons_deterministic(self):
        # nine-way first-round tie resolved lexicographically
        p = load_fixture("split_singletons_vs_bloc")
        committee, _ = phragmen_first(p)
        assert committee.election_order == ("c1", "c2", "c3")

    def test_split_singletons_can_waste_the_bloc(self):
        p = load_fixture("split_singletons_vs_bloc")
        outcomes = phragmen_first_all_outcomes(p)
        wasted = frozenset({"e1", "e2", "e3"})
        assert wasted in outcomes
        # that reachable outcome leaves the solid three-voter bloc empty-handed
        verdict = check_psc(p, wasted, hare_quota(p.n, p.k))
        assert not verdict.holds
        assert set(verdict.witness.supported) == {"c1", "c2", "c3"}

    def test_approval_overlap_pair(self):
        p = load_fixture("approval_overlap_pair")
        phragmen_committee, trace = phragmen_first(p)
        hare_committee, _ = hare_ear(p)
        assert phragmen_committee.members == {"a", "b"}
        assert hare_committee.members == {"a", "c"}
        # a's three supporters are rescaled to 1/3 each
        assert trace.rounds[0].elected == "a"
        assert trace.rounds[0].weights_after[1:] == (Fraction(1, 3),) * 3
        assert trace.rounds[1].supports["b"] == Fraction(5, 3)
        assert trace.rounds[1].supports["c"] == 1

    def test_single_voter_takes_top_class_lex_min(self):
        p = make_profile("abc", [[["b", "c"], ["a"]]], 1)
        committee, _ = phragmen_first(p)
        assert committee.election_order == ("b",)

    def test_reweighting_scales_above_quota_and_zeroes_at_it(self):
        p = parse_ballots("candidates: a b c\nk: 2\n2: a > b > c\nb > c > a\n")
        _, trace = phragmen_first(p)
        # a's supporters hold 2 > 3/2, so they scale by (2 - 3/2)/2
        assert trace.rounds[0].elected == "a"
        assert trace.rounds[0].weights_after == (Fraction(1, 4), Fraction(1, 4), 1)
        # b's supporters then hold exactly the quota and are zeroed
        assert trace.rounds[1].elected == "b"
        assert trace.rounds[1].supports["b"] == Fraction(3, 2)
        assert trace.rounds[1].weights_after == (0, 0, 0)

    def test_weights_never_negative_and_zeroed_at_most_once(self):
        for seed in range(50):
            rng = SplitMix64(seed + 1_300_000)
            n = 2 + rng.below(6)
            m = 2 + rng.below(4)
            k = 1 + rng.below(m)
            kind = "impartial-strict" if seed % 2 == 0 else "random-weak"
            p = random_profile(ProfileCulture(kind, n=n, m=m, k=k, seed=seed + 1_300_000))
            _, trace = phragmen_first(p)
            previous = [Fraction(1)] * n
            for rnd in trace.rounds:
                for before, after in zip(previous, rnd.weights_after):
                    assert after >= 0
                    if before == 0:
                        assert after == 0
                previous = list(rnd.weights_after)

    def test_all_outcomes_contains_deterministic(self):
        for seed in range(30):
            rng = SplitMix64(seed + 1_400_000)
            n = 2 + rng.below(5)
            m = 2 + rng.below(4)
            k = 1 + rng.below(m)
            p = random_profile(
                ProfileCulture("impartial-strict", n=n, m=m, k=k, seed=seed + 1_400_000))
            committee, _ = phragmen_first(p)
            assert committee.members in phragmen_first_all_outcomes(p)
