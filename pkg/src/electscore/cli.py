"""Command-line interface.

Exit codes: 0 success, 1 domain violation, 2 parse or usage error, 3 budget
exceeded, 4 failed self-test or forge verification.  Voters are numbered
from 1 in all output.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import fast, oracles
from .ballots import DICHOTOMOUS_MODEL, KEMENY_MIN, NET_MAX, SLATER, Election
from .domains import (
    check_kchotomous, check_single_crossing, check_single_peaked, require_dichotomous,
    require_single_crossing, require_single_peaked,
)
from .elx import (
    certificate_fields, certificate_text, dump_claims, load_claims, parse_graph, read_election,
    serialize_election,
)
from .errors import (
    BudgetExceeded, DomainViolation, InvalidElection, ParseError, UnsupportedBallotKind,
)

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE, EXIT_BUDGET, EXIT_CHECK = 0, 1, 2, 3, 4
DOMAINS = ("none", "dichotomous", "single-peaked", "single-crossing")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Rule:
    """How to score one rule.  ``fast`` maps a domain to ``f(election, p, k)``."""

    exact: object
    fast: dict
    best: object  # max or min: which scores win


def _exact_dodgson(weak):
    def run(e, p, k, budget, domain):
        model = DICHOTOMOUS_MODEL if domain == "dichotomous" else None
        return oracles.dodgson_score_exact(e, p, weak, model=model, budget=budget)
    return run


def _plan(fn, **kw):
    def run(e, p, k):
        score, plan = fn(e, p, **kw)
        return score, plan.certificate()
    return run


def _need_k(k):
    if k is None or k < 2:
        raise UsageError("this rule needs --k with k >= 2")
    return k


RULES = {
    "young": Rule(
        lambda e, p, k, b, d: oracles.young_score_exact(e, p, budget=b),
        {"single-peaked": lambda e, p, k: fast.sp_young_score(e, p),
         "single-crossing": lambda e, p, k: fast.sc_young_score(e, p)},
        max),
    "strongyoung": Rule(
        lambda e, p, k, b, d: oracles.young_score_exact(e, p, strong=True, budget=b),
        {"single-peaked": lambda e, p, k: fast.sp_young_score(e, p, strong=True),
         "single-crossing": lambda e, p, k: fast.sc_strongyoung_score(e, p)},
        max),
    "dodgson": Rule(
        _exact_dodgson(False),
        {"dichotomous": _plan(fast.dodgson_score_dichotomous),
         "single-peaked": _plan(fast.sp_dodgson_score)},
        min),
    "weakdodgson": Rule(
        _exact_dodgson(True),
        {"dichotomous": _plan(fast.dodgson_score_dichotomous, weak=True),
         "single-peaked": _plan(fast.sp_dodgson_score, weak=True)},
        min),
    "kemeny": Rule(
        lambda e, p, k, b, d: oracles.kemeny_score_exact(e, p, KEMENY_MIN, budget=b),
        {d: (lambda e, p, k: fast.score_via_winner_reduction(e, p, KEMENY_MIN))
         for d in ("dichotomous", "single-peaked", "single-crossing")},
        min),
    "kemeny-2m": Rule(
        lambda e, p, k, b, d: oracles.kemeny_score_exact(e, p, NET_MAX, budget=b),
        {"dichotomous": lambda e, p, k: fast.score_via_winner_reduction(e, p, NET_MAX)},
        max),
    "kemeny-22": Rule(
        lambda e, p, k, b, d: oracles.dichotomous_consensus_exact(e, 2, NET_MAX, p=p, budget=b),
        {"dichotomous": lambda e, p, k: fast.k22_kemeny_score(e, p)},
        max),
    "slater": Rule(
        lambda e, p, k, b, d: oracles.slater_score_exact(e, p, budget=b),
        {d: (lambda e, p, k: fast.score_via_winner_reduction(e, p, SLATER))
         for d in ("dichotomous", "single-peaked", "single-crossing")},
        max),
    "slater-2k": Rule(
        lambda e, p, k, b, d: oracles.slater_score_exact(e, p, k=_need_k(k), budget=b),
        {"dichotomous": lambda e, p, k: fast.k2k_slater_score(e, p, _need_k(k))},
        max),
}

# winner sets that have their own fast algorithm
WINNER_FAST = {
    ("young", "dichotomous"): lambda e, k: fast.young_winners_dichotomous(e),
    ("kemeny-22", "dichotomous"): lambda e, k: fast.mean_rule(e)[1],
    ("dodgson", "single-crossing"): lambda e, k: fast.sc_dodgson_winners(e)[0],
}


def _assert_domain(election: Election, domain: str) -> None:
    if domain == "dichotomous":
        require_dichotomous(election)
    elif domain == "single-peaked":
        require_single_peaked(election)
    elif domain == "single-crossing":
        require_single_crossing(election)


def _method(args, has_fast: bool) -> str:
    if args.method == "fast" and not has_fast:
        raise UsageError(f"no fast algorithm for rule {args.rule!r} on domain {args.domain!r}")
    if args.method == "auto":
        return "fast" if has_fast else "exact"
    return args.method


def _budget(args) -> oracles.OracleBudget:
    return oracles.OracleBudget(args.max_voters, args.max_candidates, args.max_states)


def _candidate(election: Election, name: str) -> int:
    try:
        return election.index(name)
    except InvalidElection:
        raise UsageError(f"unknown candidate {name!r}") from None


def _score(args, election, p, method):
    rule = RULES[args.rule]
    if method == "fast":
        return rule.fast[args.domain](election, p, args.k)
    return rule.exact(election, p, args.k, _budget(args), args.domain)


def cmd_score(args, out) -> int:
    election = read_election(args.file)
    p = _candidate(election, args.candidate)
    _assert_domain(election, args.domain)
    method = _method(args, args.domain in RULES[args.rule].fast)
    score, cert = _score(args, election, p, method)
    if args.format == "json":
        out.write(json.dumps({"rule": args.rule, "candidate": args.candidate, "score": score,
                              "method": method, "certificate": certificate_fields(election, cert)},
                             sort_keys=True) + "\n")
    else:
        out.write(f"rule={args.rule} candidate={args.candidate} score={score} method={method}\n")
        out.write(certificate_text(election, cert) + "\n")
    return EXIT_OK


def cmd_winner(args, out) -> int:
    election = read_election(args.file)
    _assert_domain(election, args.domain)
    special = WINNER_FAST.get((args.rule, args.domain))
    method = _method(args, special is not None or args.domain in RULES[args.rule].fast)
    if method == "fast" and special is not None:
        winners = special(election, args.k)
    else:
        scores = [_score(args, election, c, method)[0] for c in range(election.m)]
        best = RULES[args.rule].best(scores)
        winners = {c for c, s in enumerate(scores) if s == best}
    names = [election.candidates[c] for c in sorted(winners)]
    if args.format == "json":
        out.write(json.dumps({"rule": args.rule, "winners": names, "method": method}, sort_keys=True) + "\n")
    else:
        out.write(f"rule={args.rule} winners={' '.join(names)} method={method}\n")
    return EXIT_OK


def _describe(election: Election, violation) -> dict:
    name = type(violation).__name__
    c = election.candidates
    if name == "KChotomousViolation":
        return {"voter": violation.voter + 1, "groups": violation.n_groups}
    if name == "PeakViolation":
        return {"voter": violation.voter + 1, "triple": [c[x] for x in violation.triple]}
    return {"pair": [c[x] for x in violation.pair], "flips": [v + 1 for v in violation.flips]}


def cmd_check(args, out) -> int:
    election = read_election(args.file)
    try:
        if args.domain == "dichotomous":
            verdict = check_kchotomous(election, 2)
        elif args.domain == "k-chotomous":
            verdict = check_kchotomous(election, _need_k(args.k))
        elif args.domain == "single-peaked":
            if election.axis is None:
                raise DomainViolation("no axis line in the election file")
            verdict = check_single_peaked(election)
        else:
            verdict = check_single_crossing(election)
    except UnsupportedBallotKind as exc:
        raise DomainViolation(str(exc)) from exc
    witness = None if verdict.holds else _describe(election, verdict.violation)
    if args.format == "json":
        out.write(json.dumps({"domain": args.domain, "holds": verdict.holds, "witness": witness},
                             sort_keys=True) + "\n")
    else:
        line = f"domain={args.domain} verdict={'holds' if verdict.holds else 'violated'}"
        if witness:
            line += " witness=" + " ".join(
                f"{k}:{','.join(map(str, v)) if isinstance(v, list) else v}" for k, v in witness.items())
        out.write(line + "\n")
    return EXIT_OK if verdict.holds else EXIT_DOMAIN


def _read_text(path) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def cmd_forge(args, out) -> int:
    from .forge import forge

    G = parse_graph(_read_text(args.graph))
    H = parse_graph(_read_text(args.graph2)) if args.graph2 else None
    try:
        inst = forge(args.kind, G, H)
    except InvalidElection as exc:
        raise UsageError(str(exc)) from exc
    prefix = Path(args.out)
    elx, claims = prefix.with_name(prefix.name + ".elx"), prefix.with_name(prefix.name + ".claims.json")
    elx.write_text(serialize_election(inst.election), encoding="utf-8")
    claims.write_text(dump_claims(inst), encoding="utf-8")
    out.write(f"kind={inst.kind} ballots={inst.election.n} candidates={inst.election.m} "
              f"election={elx} claims={claims}\n")
    return EXIT_OK


def cmd_verify_forge(args, out) -> int:
    from .forge import verify_forge

    election = read_election(args.file)
    instance = load_claims(_read_text(args.claims).decode("utf-8"), election)
    report = verify_forge(instance, args.mode, _budget(args))
    if args.format == "json":
        rows = [{"check": r.name, "expected": r.expected, "observed": r.observed, "status": r.status}
                for r in report.rows]
        out.write(json.dumps({"kind": report.kind, "mode": report.mode, "ok": report.ok, "rows": rows},
                             sort_keys=True) + "\n")
    else:
        for line in report.lines():
            out.write(line + "\n")
        out.write(f"kind={report.kind} mode={report.mode} verdict={'ok' if report.ok else 'failed'}\n")
    return EXIT_OK if report.ok else EXIT_CHECK


def cmd_selftest(args, out) -> int:
    from .acceptance import run_selftest

    ok, text = run_selftest(args.seed)
    out.write(text)
    out.write(f"selftest {'passed' if ok else 'FAILED'}\n")
    return EXIT_OK if ok else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="electscore",
                                     description="Election scores on restricted preference domains.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, budgets=True):
        p.add_argument("--format", choices=("text", "json"), default="text")
        if budgets:
            d = oracles.DEFAULT_BUDGET
            p.add_argument("--max-voters", type=int, default=d.max_voters)
            p.add_argument("--max-candidates", type=int, default=d.max_candidates)
            p.add_argument("--max-states", type=int, default=d.max_states)

    for name, fn in (("score", cmd_score), ("winner", cmd_winner)):
        p = sub.add_parser(name)
        p.add_argument("file")
        p.add_argument("--rule", choices=tuple(RULES), required=True)
        if name == "score":
            p.add_argument("--candidate", required=True)
        p.add_argument("--method", choices=("auto", "fast", "exact"), default="auto")
        p.add_argument("--domain", choices=DOMAINS, default="none")
        p.add_argument("--k", type=int)
        common(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("check")
    p.add_argument("file")
    p.add_argument("--domain", choices=("dichotomous", "k-chotomous", "single-peaked", "single-crossing"),
                   required=True)
    p.add_argument("--k", type=int)
    common(p, budgets=False)
    p.set_defaults(func=cmd_check)

    from .forge import KINDS

    p = sub.add_parser("forge")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--graph2")
    p.add_argument("--out", required=True, help="output prefix for .elx and .claims.json")
    p.set_defaults(func=cmd_forge)

    p = sub.add_parser("verify-forge")
    p.add_argument("file")
    p.add_argument("claims")
    p.add_argument("--mode", choices=("full", "witness-only"), default="full")
    common(p)
    p.set_defaults(func=cmd_verify_forge)

    p = sub.add_parser("selftest")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", 0) is None:
        from .acceptance import SEED

        args.seed = SEED
    try:
        return args.func(args, out)
    except DomainViolation as exc:
        print(f"domain violation: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
