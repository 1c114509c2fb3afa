from fractions import Fraction

import pytest

from conftest import load_fixture
from propvote import (EarConfig, ProfileCulture, Quota, check_generalised_psc,
                      check_pjr, check_psc, default_quota, droop_quota, ear,
                      ear_budgeted, hare_quota, is_dichotomous, make_profile,
                      parse_ballots, random_profile, rank_maximal_order,
                      rank_vector, reweight_supporters)
from propvote.phragmen import hare_ear
from propvote.quota import QuotaMode


def suite_profile(seed, kind="impartial-strict", base=0):
    from propvote import SplitMix64
    rng = SplitMix64(seed + base)
    n = 2 + rng.below(7)
    m = 2 + rng.below(5)
    k = 1 + rng.below(min(m, n))
    return random_profile(ProfileCulture(kind, n=n, m=m, k=k, seed=seed + base))


class TestRankMaximalOrder:
    def test_dichotomous_fixture_order(self):
        p = load_fixture("dichotomous_quota_gap")
        assert rank_maximal_order(p) == ("f", "a", "b", "c", "d", "e", "g")

    def test_distinct_pluralities_sort_descending(self):
        p = parse_ballots(
            "candidates: x y z\nk: 1\n3: x > y > z\n2: y > x > z\n1: z > y > x\n"
        )
        assert rank_maximal_order(p) == ("x", "y", "z")

    def test_vector_counts_sum_to_n(self):
        p = load_fixture("nine_voter_two_blocs")
        for c in p.candidates:
            assert sum(rank_vector(p, c)) == p.n

    def test_matches_pairwise_comparator_oracle(self):
        # selection sort with an explicit pairwise lexicographic comparison
        def better(ra, rb):
            for x, y in zip(ra, rb):
                if x != y:
                    return x > y
            return None

        for seed in range(40):
            p = suite_profile(seed, base=100_000)
            vectors = {c: rank_vector(p, c) for c in p.candidates}
            remaining = sorted(p.candidates)
            expected = []
            while remaining:
                best = remaining[0]
                for c in remaining[1:]:
                    cmp = better(vectors[c], vectors[best])
                    if cmp is True:
                        best = c
                expected.append(best)
                remaining.remove(best)
            assert rank_maximal_order(p) == tuple(expected)


class TestReweightSupporters:
    def test_six_unit_supporters(self):
        w = reweight_supporters([Fraction(1)] * 9, [3, 4, 5, 6, 7, 8],
                                Quota(Fraction(7, 3)))
        assert w[3:] == [Fraction(11, 18)] * 6
        assert sum(w[3:]) == Fraction(11, 3)

    def test_three_unit_supporters_hare(self):
        w = reweight_supporters([Fraction(1)] * 4, [1, 2, 3], hare_quota(8, 4))
        assert w[1:] == [Fraction(1, 3)] * 3

    def test_total_equal_to_quota_zeroes(self):
        w = reweight_supporters([Fraction(1)] * 2, [0, 1], Quota(Fraction(2)))
        assert w == [Fraction(0), Fraction(0)]

    def test_below_quota_rejected(self):
        with pytest.raises(ValueError):
            reweight_supporters([Fraction(1)], [0], Quota(Fraction(2)))


class TestEarGoldens:
    def test_nine_voter_fixture(self):
        p = load_fixture("nine_voter_two_blocs")
        committee, trace = ear(p)
        assert committee.election_order == ("e1", "e2", "c1")
        assert [r.depth for r in trace.rounds] == [1, 2, 3]
        # the six-voter bloc's weight drops by one quota per seat it wins
        assert sum(trace.rounds[0].weights_after[3:]) == Fraction(11, 3)
        assert sum(trace.rounds[1].weights_after[3:]) == Fraction(4, 3)
        # third seat: c1 and c3 tie on support, priority picks c1
        assert trace.rounds[2].supports["c1"] == 3
        assert trace.rounds[2].supports["c3"] == 3

    def test_single_seat_reinforced_profile(self):
        p = load_fixture("single_seat_flip_after")
        committee, trace = ear(p)
        assert committee.election_order == ("a",)
        (rnd,) = trace.rounds
        assert rnd.depth == 2
        assert rnd.supports == {"a": 56, "b": 90, "c": 54}

    def test_committee_is_everything_when_k_equals_m(self):
        p = parse_ballots("candidates: a b c\nk: 3\na > b > c\nb > c > a\n")
        for q in (None, droop_quota(2, 3), hare_quota(2, 3)):
            committee, _ = ear(p, EarConfig(quota=q))
            assert committee.members == p.candidates

    def test_weak_monotonicity_pair(self):
        before, _ = ear(load_fixture("weak_monotonicity_pair_before"))
        after, _ = ear(load_fixture("weak_monotonicity_pair_after"))
        assert before.election_order == ("a", "f")
        assert after.election_order == ("d", "c")

    def test_dichotomous_quota_gap(self):
        p = load_fixture("dichotomous_quota_gap")
        hare_committee, _ = hare_ear(p)
        default_committee, trace = ear(p)
        assert hare_committee.election_order == ("f", "a", "b", "c", "d")
        assert default_committee.election_order == ("f", "a", "c", "d", "e")
        # every default-quota seat already clears at depth 1
        assert [r.depth for r in trace.rounds] == [1] * 5
        assert trace.rounds[0].supports["f"] == 18


class TestEarConfig:
    def test_inadmissible_quota_rejected(self):
        p = load_fixture("nine_voter_two_blocs")
        with pytest.raises(ValueError, match="outside"):
            ear(p, EarConfig(quota=Quota(Fraction(9, 4))))  # inclusive at n/(k+1)

    def test_out_of_range_quota_with_override(self):
        p = parse_ballots("candidates: a b\nk: 1\n3: a > b\n")
        committee, _ = ear(p, EarConfig(quota=Quota(Fraction(1)), allow_any_quota=True))
        assert committee.members == {"a"}

    def test_given_priority_order(self):
        p = parse_ballots("candidates: a b z\nk: 2\n3: b > a > z\n2: a > b > z\n")
        committee, _ = ear(p, EarConfig(priority=("z", "a", "b")))
        assert committee.election_order == ("a", "b")

    def test_priority_must_be_permutation(self):
        p = parse_ballots("candidates: a b\nk: 1\na > b\n")
        with pytest.raises(ValueError):
            ear(p, EarConfig(priority=("a",)))

    def test_max_support_priority_diverges_from_rank_maximal(self):
        # seats contested at depth 2: support 4 for c3 vs 3 for c1, while the
        # rank-maximal order prefers c1
        p = parse_ballots(
            "candidates: c1 c2 c3 c4 c5\n"
            "k: 2\n"
            "c5 > c1 > c3 > c2 > c4\n"
            "c2 > c3 > c1 > c4 > c5\n"
            "c2 > c4 > c1 > c5 > c3\n"
            "2: c1 > c3 > c2 > c5 > c4\n"
            "c3 > c5 > c1 > c2 > c4\n"
        )
        by_rank, _ = ear(p)
        by_support, _ = ear(p, EarConfig(priority="max-support"))
        assert by_rank.election_order == ("c1", "c3")
        assert by_support.election_order == ("c3", "c1")

    def test_partial_lists_fill_by_priority(self):
        p = parse_ballots("candidates: a b x y\nk: 2\n2: a\nb\n")
        committee, trace = ear(p, EarConfig(partial_lists=True))
        assert committee.election_order == ("a", "b")
        assert [r.elected for r in trace.rounds] == ["a"]
        assert trace.filled_by_priority == ("b",)

    def test_trace_disabled(self):
        p = load_fixture("nine_voter_two_blocs")
        committee, trace = ear(p, EarConfig(trace=False))
        assert committee.election_order == ("e1", "e2", "c1")
        assert trace.rounds == ()


class TestEarProperties:
    def test_weight_conservation_and_depth_monotonicity(self):
        for seed in range(60):
            p = suite_profile(seed, base=200_000)
            q = default_quota(p.n, p.k, p.m)
            _, trace = ear(p)
            assert len(trace.rounds) == p.k
            depths = [r.depth for r in trace.rounds]
            assert depths == sorted(depths)
            for i, rnd in enumerate(trace.rounds, start=1):
                assert sum(rnd.weights_after) == p.n - i * q.value

    def test_satisfies_generalised_psc_at_its_own_quota(self):
        for seed in range(80):
            kind = "impartial-strict" if seed % 2 == 0 else "random-weak"
            p = suite_profile(seed, kind=kind, base=300_000)
            for q in (droop_quota(p.n, p.k), default_quota(p.n, p.k, p.m),
                      hare_quota(p.n, p.k)):
                committee, _ = ear(p, EarConfig(quota=q))
                assert check_generalised_psc(p, committee, q).holds

    def test_satisfies_pjr_on_dichotomous_profiles(self):
        for seed in range(60):
            p = suite_profile(seed, kind="dichotomous", base=400_000)
            assert is_dichotomous(p)
            committee, _ = ear(p)
            assert check_pjr(p, committee).holds

    def test_default_quota_can_miss_a_droop_demand(self):
        # Four of five voters solidly back {c2, c3, c4}, clearing three Droop
        # quotas (4 > 3 * 5/4), yet with the default quota 7/5 their weight
        # funds only two seats and the rank-maximal order then prefers c1.
        # Running the rule at the Droop quota itself repairs the claim.
        p = parse_ballots(
            "candidates: c1 c2 c3 c4\n"
            "k: 3\n"
            "c3 > c4 > c2 > c1\n"
            "c2 > c4 > c3 > c1\n"
            "c2 > c3 > c4 > c1\n"
            "c1 > c3 > c2 > c4\n"
            "c3 > c4 > c2 > c1\n"
        )
        dq = droop_quota(5, 3)
        default_committee, _ = ear(p)
        assert default_committee.members == {"c1", "c2", "c3"}
        verdict = check_psc(p, default_committee, dq)
        assert not verdict.holds
        assert set(verdict.witness.supported) == {"c2", "c3", "c4"}
        assert verdict.witness.ell == 3
        assert not check_generalised_psc(p, default_committee, dq).holds
        droop_committee, _ = ear(p, EarConfig(quota=dq))
        assert check_psc(p, droop_committee, dq).holds


class TestEarBudgeted:
    def test_unit_costs_reduce_to_hare_quota_run(self):
        p = load_fixture("nine_voter_two_blocs")
        chosen = ear_budgeted(p, {c: 1 for c in p.candidates}, p.k)
        hare_committee, _ = hare_ear(p)
        assert chosen == hare_committee.election_order

    def test_single_candidate_consuming_whole_budget(self):
        p = parse_ballots("candidates: a b\nk: 1\n4: a > b\n")
        assert ear_budgeted(p, {"a": 5, "b": 5}, 5) == ("a",)

    def test_unit_costs_on_random_strict_profiles(self):
        for seed in range(40):
            p = suite_profile(seed, base=500_000)
            chosen = ear_budgeted(p, {c: 1 for c in p.candidates}, p.k)
            hare_committee, _ = hare_ear(p)
            assert chosen == hare_committee.election_order

    def test_costs_above_budget_rejected(self):
        p = parse_ballots("candidates: a b\nk: 1\na > b\n")
        with pytest.raises(ValueError):
            ear_budgeted(p, {"a": 3, "b": 1}, 2)

    def test_may_leave_budget_unspent(self):
        # one affordable candidate never reaches the support threshold
        p = parse_ballots("candidates: a b c\nk: 1\n9: a > b > c\n")
        chosen = ear_budgeted(p, {"a": 2, "b": 2, "c": 3}, 4)
        assert chosen == ("a", "b")
