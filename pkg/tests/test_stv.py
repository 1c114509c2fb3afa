from fractions import Fraction

import pytest

from conftest import load_fixture
from propvote import (ProfileCulture, SplitMix64, StvConfig, check_psc,
                      default_quota, droop_quota, hare_quota, make_profile,
                      parse_ballots, random_profile, stv, stv_all_outcomes)
from propvote.stv import Action


def suite_profile(seed, base=0):
    rng = SplitMix64(seed + base)
    n = 2 + rng.below(7)
    m = 2 + rng.below(5)
    k = 1 + rng.below(min(m, n))
    return random_profile(ProfileCulture("impartial-strict", n=n, m=m, k=k, seed=seed + base))


class TestStvGoldens:
    def test_nine_voter_fixture_committee(self):
        p = load_fixture("nine_voter_two_blocs")
        committee, trace = stv(p)
        assert committee.members == {"e1", "e2", "c1"}
        assert committee.election_order == ("e1", "e2", "c1")
        # first two rounds seat the e-bloc's leaders with exact transfers
        assert trace.rounds[0].supports["e1"] == 6
        assert trace.rounds[1].supports["e2"] == Fraction(15, 4)
        assert sum(trace.rounds[1].weights_after) == 9 - 2 * Fraction(9, 4)
        # lowest-support exclusions under the survive-ties-lexicographically
        # rule; the zero-support candidates go first
        assert trace.eliminated == ("e4", "d1", "c3", "c2")

    def test_single_seat_flip_pair(self):
        before, trace_before = stv(load_fixture("single_seat_flip_before"))
        after, trace_after = stv(load_fixture("single_seat_flip_after"))
        assert before.members == {"a"}
        assert trace_before.eliminated == ("b",)
        assert trace_before.rounds[0].supports == {"a": 35, "b": 32, "c": 33}
        assert after.members == {"b"}
        assert trace_after.eliminated == ("c",)
        assert trace_after.rounds[0].supports == {"a": 37, "b": 32, "c": 31}

    def test_discrete_reweighting_starves_fourth_candidate(self):
        p = load_fixture("discrete_reweight_trap")
        committee, trace = stv(p, StvConfig(discrete=2))
        assert committee.members == {"c1", "c2", "c3", "c4", "c5", "c6", "c7"}
        assert "c8" not in committee.members
        # each seating removes exactly two whole voters' weight, in ballot order
        assert trace.rounds[0].weights_after[4:6] == (Fraction(0), Fraction(0))
        assert trace.rounds[1].weights_after[6:8] == (Fraction(0), Fraction(0))
        assert trace.eliminated == ("c8",)
        assert trace.rounds[-1].action is Action.BULK_ELECT

    def test_k_equals_m_bulk_elects(self):
        p = parse_ballots("candidates: a b c\nk: 3\n2: a > b > c\nb > a > c\n")
        committee, trace = stv(p)
        assert committee.members == {"a", "b", "c"}
        assert trace.rounds[0].action is Action.BULK_ELECT


class TestStvContracts:
    def test_rejects_weak_orders(self):
        p = make_profile("abc", [[["a", "b"], ["c"]]], 1)
        with pytest.raises(ValueError, match="strict"):
            stv(p)

    def test_discrete_amount_must_cover_quota(self):
        p = load_fixture("discrete_reweight_trap")
        with pytest.raises(ValueError, match="discrete"):
            stv(p, StvConfig(discrete=1))

    def test_inadmissible_quota_rejected(self):
        p = load_fixture("nine_voter_two_blocs")
        with pytest.raises(ValueError, match="outside"):
            stv(p, StvConfig(quota=hare_quota(9, 2)))


class TestStvProperties:
    def test_fractional_transfer_removes_exactly_one_quota(self):
        for seed in range(60):
            p = suite_profile(seed, base=600_000)
            q = droop_quota(p.n, p.k)
            _, trace = stv(p, StvConfig(quota=q))
            elected = 0
            for rnd in trace.rounds:
                if rnd.action is Action.ELECT:
                    elected += 1
                if rnd.action is not Action.BULK_ELECT:
                    assert sum(rnd.weights_after) == p.n - elected * q.value
                assert all(w >= 0 for w in rnd.weights_after)

    def test_round_count_bounded_by_m(self):
        for seed in range(40):
            p = suite_profile(seed, base=700_000)
            _, trace = stv(p)
            assert len(trace.rounds) <= p.m

    def test_satisfies_psc_at_every_admissible_quota(self):
        for seed in range(120):
            p = suite_profile(seed, base=800_000)
            for q in (droop_quota(p.n, p.k), hare_quota(p.n, p.k),
                      default_quota(p.n, p.k, p.m)):
                committee, _ = stv(p, StvConfig(quota=q))
                assert check_psc(p, committee, q).holds


class TestAllOutcomes:
    def test_no_ties_yields_singleton(self):
        p = load_fixture("single_seat_flip_before")
        assert stv_all_outcomes(p) == {frozenset({"a"})}

    def test_two_voter_standoff(self):
        p = parse_ballots("candidates: a b\nk: 1\na > b\nb > a\n")
        assert stv_all_outcomes(p) == {frozenset({"a"}), frozenset({"b"})}

    def test_contains_deterministic_outcome(self):
        for seed in range(30):
            p = suite_profile(seed, base=900_000)
            committee, _ = stv(p)
            assert committee.members in stv_all_outcomes(p)

    def test_candidate_bound_enforced(self):
        ballots = " > ".join(f"x{i:02d}" for i in range(13))
        p = parse_ballots(
            "candidates: " + " ".join(f"x{i:02d}" for i in range(13)) + "\nk: 1\n" +
            f"2: {ballots}\n"
        )
        with pytest.raises(ValueError, match="deterministic"):
            stv_all_outcomes(p)
