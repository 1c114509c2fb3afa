"""Multiwinner voting over weak-order ballots with exact rational
arithmetic, plus testers for proportional-representation axioms and
candidate-monotonicity properties."""

from .core import (Candidate, Committee, Profile, WeakOrder,
                   approval_set_at_depth, complete_order, initial_weights,
                   is_dichotomous, is_strict, jth_preferred, make_profile,
                   rank_of)
from .quota import (Quota, QuotaMode, admissible, default_quota, droop_quota,
                    hare_quota, max_multiple, parse_quota, support_meets)
from .ear import (EarConfig, EarTrace, ear, ear_budgeted, rank_maximal_order,
                  rank_vector, reweight_supporters)
from .stv import StvConfig, StvTrace, stv, stv_all_outcomes
from .qbs import borda_score, qbs
from .phragmen import hare_ear, phragmen_first, phragmen_first_all_outcomes
from .axioms import (SolidCoalitionRecord, Verdict, Witness,
                     check_generalised_psc, check_generalised_weak_psc,
                     check_implications, check_pjr, check_psc, check_weak_psc,
                     maximal_generalised_coalition, maximal_solid_coalitions)
from .monotonicity import (MonotonicityVerdict, Reinforcement,
                           check_monotonicity, enumerate_reinforcements)
from .testkit import (ProfileCulture, SplitMix64, bucklin_tally,
                      bucklin_winner, random_profile)
from .ballots import ParseError, parse_ballots, serialize_profile, serialize_trace

__all__ = [name for name in dir() if not name.startswith("_")]
