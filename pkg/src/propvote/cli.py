"""Command-line interface.

Subcommands::

    propvote run {ear|stv|qbs|phragmen1} <ballots> [rule flags]
    propvote check {psc|weak-psc|gpsc|weak-gpsc|pjr} <ballots> --committee a,b,c [--quota ...]
    propvote mono {cm|rrcm|nccm|wcm} --rule {ear|stv|qbs|phragmen1} <ballots> [rule flags]
    propvote gen --culture ... --seed ... -n -m -k [-o out]
    propvote report {ear|stv|qbs|phragmen1} <ballots> --out DIR [rule flags]

Exit codes: 0 computed / HOLDS, 1 VIOLATED (check and mono), 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import ballots as bt
from .axioms import (check_generalised_psc, check_generalised_weak_psc,
                     check_pjr, check_psc, check_weak_psc)
from .core import Committee, Profile
from .ear import EarConfig, MAX_SUPPORT, RANK_MAXIMAL, ear
from .monotonicity import VARIANTS, check_monotonicity
from .phragmen import hare_ear, phragmen_first, phragmen_first_all_outcomes
from .qbs import qbs
from .quota import Quota, droop_quota, parse_quota
from .stv import StvConfig, stv, stv_all_outcomes
from .testkit import DICHOTOMOUS, IMPARTIAL_STRICT, RANDOM_WEAK, ProfileCulture, random_profile

RULES = ("ear", "stv", "qbs", "phragmen1")
AXIOMS = ("psc", "weak-psc", "gpsc", "weak-gpsc", "pjr")


def _load_profile(path: str) -> Profile:
    return bt.parse_ballots(Path(path).read_text())


def _quota_arg(args, profile: Profile) -> Quota | None:
    if args.quota is None:
        return None
    return parse_quota(args.quota, profile.n, profile.k, profile.m)


def _ear_config(args, profile: Profile) -> EarConfig:
    priority: str | tuple = RANK_MAXIMAL
    if args.priority:
        if args.priority == "rank-maximal":
            priority = RANK_MAXIMAL
        elif args.priority == "max-support":
            priority = MAX_SUPPORT
        elif args.priority.startswith("file:"):
            priority = tuple(Path(args.priority[len("file:"):]).read_text().split())
        else:
            raise ValueError(f"unknown priority {args.priority!r}")
    return EarConfig(
        quota=_quota_arg(args, profile),
        priority=priority,
        partial_lists=args.partial_list,
        allow_any_quota=args.any_quota,
    )


def _stv_config(args, profile: Profile) -> StvConfig:
    discrete = None
    if args.reweight != "fractional":
        if not args.reweight.startswith("discrete:"):
            raise ValueError("--reweight must be 'fractional' or 'discrete:<p>'")
        discrete = int(args.reweight[len("discrete:"):])
    return StvConfig(
        quota=_quota_arg(args, profile),
        discrete=discrete,
        allow_any_quota=args.any_quota,
    )


def _run_rule(name: str, profile: Profile, args) -> tuple[Committee, object, Quota | None]:
    """Deterministic dispatch; returns committee, trace and the active quota."""
    if name == "ear":
        cfg = _ear_config(args, profile)
        committee, trace = ear(profile, cfg)
        from .quota import default_quota
        active = cfg.quota or default_quota(profile.n, profile.k, profile.m)
        return committee, trace, active
    if name == "stv":
        cfg = _stv_config(args, profile)
        committee, trace = stv(profile, cfg)
        return committee, trace, cfg.quota or droop_quota(profile.n, profile.k)
    if name == "qbs":
        committee = qbs(profile, _quota_arg(args, profile))
        return committee, None, None
    if name == "phragmen1":
        committee, trace = phragmen_first(profile)
        from .quota import hare_quota
        return committee, trace, hare_quota(profile.n, profile.k)
    raise ValueError(f"unknown rule {name!r}")


def _cmd_run(args) -> int:
    profile = _load_profile(args.ballots)
    if args.ties == "all":
        if args.rule == "stv":
            outcomes = stv_all_outcomes(profile, _stv_config(args, profile))
        elif args.rule == "phragmen1":
            outcomes = phragmen_first_all_outcomes(profile)
        else:
            raise ValueError(f"--ties all is not available for {args.rule}")
        for members in sorted(" ".join(sorted(w)) for w in outcomes):
            print(members)
        return 0
    committee, trace, _ = _run_rule(args.rule, profile, args)
    print(" ".join(committee.election_order))
    if args.trace:
        if trace is None:
            raise ValueError(f"{args.rule} does not produce a trace")
        Path(args.trace).write_text(bt.serialize_trace(args.rule, committee, trace))
    return 0


def _cmd_check(args) -> int:
    profile = _load_profile(args.ballots)
    members = frozenset(x for x in args.committee.split(",") if x)
    quota = _quota_arg(args, profile)
    if args.axiom == "pjr":
        if args.quota is not None:
            raise ValueError("pjr does not take a quota")
        verdict = check_pjr(profile, members)
        quota = None
    else:
        quota = quota or droop_quota(profile.n, profile.k)
        checker = {
            "psc": check_psc,
            "weak-psc": check_weak_psc,
            "gpsc": check_generalised_psc,
            "weak-gpsc": check_generalised_weak_psc,
        }[args.axiom]
        verdict = checker(profile, members, quota)
    print(json.dumps(bt.verdict_to_dict(verdict, quota), indent=2))
    return 0 if verdict.holds else 1


def _cmd_mono(args) -> int:
    profile = _load_profile(args.ballots)

    def rule(p: Profile) -> Committee:
        committee, _, _ = _run_rule(args.rule, p, args)
        return committee

    verdict = check_monotonicity(rule, profile, args.variant,
                                 pair_identical_voters=args.pairs,
                                 strict_only=args.rule in ("stv", "qbs"))
    print(json.dumps(bt.monotonicity_to_dict(verdict, args.rule), indent=2))
    return 0 if verdict.holds else 1


def _cmd_gen(args) -> int:
    kind = args.culture
    extra = {}
    if kind.startswith("weak:"):
        extra["max_classes"] = int(kind[len("weak:"):])
        kind = RANDOM_WEAK
    elif kind == "weak":
        kind = RANDOM_WEAK
    elif kind.startswith("dichotomous:"):
        extra["approval_prob"] = Fraction(kind[len("dichotomous:"):])
        kind = DICHOTOMOUS
    elif kind == "dichotomous":
        kind = DICHOTOMOUS
    elif kind == "impartial":
        kind = IMPARTIAL_STRICT
    else:
        raise ValueError(f"unknown culture {args.culture!r}")
    culture = ProfileCulture(kind=kind, n=args.n, m=args.m, k=args.k,
                             seed=args.seed, **extra)
    text = bt.serialize_profile(random_profile(culture))
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_report(args) -> int:
    from .report import write_report

    profile = _load_profile(args.ballots)
    committee, trace, quota = _run_rule(args.rule, profile, args)
    if trace is None:
        raise ValueError(f"{args.rule} does not produce a round trace to report")
    trace_dict = bt.trace_to_dict(args.rule, committee, trace)
    paths = write_report(args.out, trace_dict, quota)
    print(" ".join(committee.election_order))
    for p in paths:
        print(p)
    return 0


def _add_rule_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--quota", default=None,
                     help="hare | droop | default | <p>/<q>[,strict]")
    sub.add_argument("--priority", default=None,
                     help="ear: rank-maximal | max-support | file:<path>")
    sub.add_argument("--partial-list", action="store_true",
                     help="ear: never approve unlisted candidates")
    sub.add_argument("--reweight", default="fractional",
                     help="stv: fractional | discrete:<p>")
    sub.add_argument("--ties", choices=("lex", "all"), default="lex",
                     help="stv/phragmen1: deterministic or enumerate")
    sub.add_argument("--any-quota", action="store_true",
                     help="allow quotas outside (n/(k+1), n/k]")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="propvote")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run a voting rule")
    run.add_argument("rule", choices=RULES)
    run.add_argument("ballots")
    _add_rule_flags(run)
    run.add_argument("--trace", default=None, help="write the round trace as JSON")
    run.set_defaults(func=_cmd_run)

    check = commands.add_parser("check", help="test a committee against an axiom")
    check.add_argument("axiom", choices=AXIOMS)
    check.add_argument("ballots")
    check.add_argument("--committee", required=True, help="comma-separated members")
    check.add_argument("--quota", default=None)
    check.set_defaults(func=_cmd_check)

    mono = commands.add_parser("mono", help="search for a monotonicity violation")
    mono.add_argument("variant", choices=VARIANTS)
    mono.add_argument("ballots")
    mono.add_argument("--rule", choices=RULES, required=True)
    _add_rule_flags(mono)
    mono.add_argument("--pairs", action="store_true",
                      help="also reinforce pairs of identical ballots")
    mono.set_defaults(func=_cmd_mono)

    gen = commands.add_parser("gen", help="generate a seeded random profile")
    gen.add_argument("--culture", required=True,
                     help="impartial | weak[:maxclasses] | dichotomous[:prob]")
    gen.add_argument("-n", type=int, required=True)
    gen.add_argument("-m", type=int, required=True)
    gen.add_argument("-k", type=int, required=True)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("-o", "--output", default=None)
    gen.set_defaults(func=_cmd_gen)

    report = commands.add_parser("report", help="write round table and figures")
    report.add_argument("rule", choices=("ear", "stv", "phragmen1"))
    report.add_argument("ballots")
    _add_rule_flags(report)
    report.add_argument("--out", required=True, help="output directory")
    report.set_defaults(func=_cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except bt.ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
