"""Command-line front end.

Exit codes: 0 success, 1 negative verdict or repro failure, 2 input error,
3 dynamics hit the round limit.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import fixtures
from .coalitions import Partition, format_coalition, members
from .core import build_pair_system, exact_separable_fit, lls_fit, relaxed_efficiency_fit
from .dynamics import run_dynamics
from .errors import HedonicError
from .game import AdditivePairwise, preference_list
from .gamefile import FIT_METHODS, load_game, pair_values_to_dict, parse_rule
from .repro import exit_code, run_repro
from .social import social_report
from .stability import find_nash_stable, is_nash_stable

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_NO_CONVERGENCE = 0, 1, 2, 3


def fmt(x: float) -> str:
    return f"{x:.9g}"


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _rule_spec(args) -> str:
    if getattr(args, "pairs_from", None):
        if args.rule not in (None, "pairs"):
            raise HedonicError("--pairs-from only combines with --rule pairs")
        return f"pairs-from:{args.pairs_from}"
    return args.rule or "srg"


def _witness_dict(w):
    return {"player": w.player, "from": members(w.source), "to_block": members(w.to_block),
            "gain_before": w.gain_before, "gain_after": w.gain_after}


def cmd_check(args) -> int:
    game = load_game(args.game, args.policy)
    part = Partition.parse(args.partition, game.u.n)
    rule = parse_rule(_rule_spec(args), game)
    stable, w = is_nash_stable(game.u, rule, part)
    if args.json:
        _emit({"partition": str(part), "stable": stable, "witness": _witness_dict(w) if w else None})
    else:
        print("STABLE" if stable else "UNSTABLE")
        if w:
            print(f"witness: {w}")
    return EXIT_OK if stable else EXIT_NEGATIVE


def cmd_enumerate(args) -> int:
    game = load_game(args.game, args.policy)
    rule = parse_rule(_rule_spec(args), game)
    found = find_nash_stable(game.u, rule)
    if args.json:
        _emit({"count": len(found), "partitions": [str(p) for p in found]})
    else:
        for p in found:
            print(p)
        print(f"{len(found)} Nash-stable partition{'' if len(found) == 1 else 's'}")
    return EXIT_OK


def cmd_fit(args) -> int:
    game = load_game(args.game, args.policy)
    u = game.u
    out = {"method": args.method}
    if args.method == "exact":
        v = exact_separable_fit(u)
        if v is None:
            if args.json:
                _emit({"method": "exact", "feasible": False})
            else:
                print("INFEASIBLE")
            return EXIT_NEGATIVE
        out["feasible"] = True
        sys_ = build_pair_system(u)
        out["residual"] = float(np.linalg.norm(sys_.b - sys_.A @ v.vector))
    elif args.method == "relaxed":
        v, obj = relaxed_efficiency_fit(u)
        out["objective"] = obj
    else:
        v, res = lls_fit(u)
        out["residual"] = res
    rule = AdditivePairwise(u, v)
    prefs = {i: [(format_coalition(m), x) for m, x in preference_list(rule, i)] for i in range(1, u.n + 1)}
    if args.json:
        out["v"] = pair_values_to_dict(v)
        out["preferences"] = {str(i): [{"coalition": c, "payoff": x} for c, x in rows] for i, rows in prefs.items()}
        _emit(out)
        return EXIT_OK
    for key, x in pair_values_to_dict(v).items():
        print(f"v({key}) = {fmt(x)}")
    if "objective" in out:
        print(f"objective = {fmt(out['objective'])}")
    if "residual" in out:
        print(f"residual = {fmt(out['residual'])}")
    for i, rows in prefs.items():
        print(f"player {i}: " + " > ".join(f"{c}={fmt(x)}" for c, x in rows))
    return EXIT_OK


def cmd_dynamics(args) -> int:
    game = load_game(args.game, args.policy)
    rule = parse_rule(_rule_spec(args), game)
    tr = run_dynamics(game.u, rule, args.seed, args.max_rounds)
    if args.trace:
        Path(args.trace).write_text(tr.dumps(), encoding="utf-8")
    if args.json:
        _emit({"seed": args.seed, "rule": rule.kind, "outcome": tr.outcome, "rounds": tr.rounds,
               "moves": len(tr.steps), "partition": str(tr.partition) if tr.converged else None})
    elif tr.converged:
        print(f"CONVERGED {tr.partition} after {tr.rounds} rounds")
    else:
        print(f"NO-CONVERGENCE after {tr.rounds} rounds")
    return EXIT_OK if tr.converged else EXIT_NO_CONVERGENCE


def cmd_social(args) -> int:
    game = load_game(args.game, args.policy)
    achieved = None
    converged = None
    if args.rule or args.pairs_from:
        rule = parse_rule(_rule_spec(args), game)
        tr = run_dynamics(game.u, rule, args.seed, args.max_rounds)
        converged = tr.converged
        achieved = tr.partition
    rep = social_report(game.u, achieved)
    if args.json:
        _emit({"optimum_value": rep.optimum_value, "optimum_partition": str(rep.optimum_partition),
               "converged": converged,
               "achieved_value": rep.achieved_value,
               "achieved_partition": str(rep.achieved_partition) if rep.achieved_partition else None,
               "gap": rep.gap, "ratio": rep.ratio})
        return EXIT_OK
    print(f"S_u* = {fmt(rep.optimum_value)}, Π* = {rep.optimum_partition}")
    if converged is not None:
        if converged:
            print(f"S_u = {fmt(rep.achieved_value)} at {rep.achieved_partition}")
            ratio = fmt(rep.ratio) if rep.ratio is not None else "undefined"
            print(f"gap (S_u* - S_u) = {fmt(rep.gap)}, ratio (S_u*/S_u) = {ratio}")
        else:
            print("dynamics did not converge; no equilibrium value")
    return EXIT_OK


def cmd_pipeline(args) -> int:
    """Fit pair values, run dynamics under them, and compare with the social optimum."""
    game = load_game(args.game, args.policy)
    u = game.u
    if args.method == "exact" and exact_separable_fit(u) is None:
        if args.json:
            _emit({"method": "exact", "feasible": False})
        else:
            print("INFEASIBLE")
        return EXIT_NEGATIVE
    rule = parse_rule(f"pairs-from:{args.method}", game)
    tr = run_dynamics(u, rule, args.seed, args.max_rounds)
    rep = social_report(u, tr.partition if tr.converged else None)
    if args.json:
        _emit({"method": args.method, "v": pair_values_to_dict(rule.v), "seed": args.seed,
               "outcome": tr.outcome, "rounds": tr.rounds,
               "partition": str(tr.partition) if tr.converged else None,
               "optimum_value": rep.optimum_value, "optimum_partition": str(rep.optimum_partition),
               "achieved_value": rep.achieved_value, "gap": rep.gap, "ratio": rep.ratio})
    else:
        for key, x in pair_values_to_dict(rule.v).items():
            print(f"v({key}) = {fmt(x)}")
        if tr.converged:
            print(f"CONVERGED {tr.partition} after {tr.rounds} rounds")
        else:
            print(f"NO-CONVERGENCE after {tr.rounds} rounds")
        print(f"S_u* = {fmt(rep.optimum_value)}, Π* = {rep.optimum_partition}")
        if tr.converged:
            ratio = fmt(rep.ratio) if rep.ratio is not None else "undefined"
            print(f"gap (S_u* - S_u) = {fmt(rep.gap)}, ratio (S_u*/S_u) = {ratio}")
    return EXIT_OK if tr.converged else EXIT_NO_CONVERGENCE


def cmd_repro(args) -> int:
    u = load_game(args.game).u if args.game else fixtures.four_player_game()
    items = run_repro(u)
    if args.json:
        _emit({"items": [it.as_dict() for it in items], "exit_code": exit_code(items)})
    else:
        for it in items:
            print(f"{it.status:<18} {it.name}: {it.detail}")
    return exit_code(items)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hedonic", description="Nash stability tools for hedonic TU games.")
    sub = p.add_subparsers(dest="command", required=True)

    def game_cmd(name, help_, rule=True):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("game", help="game file (JSON)")
        sp.add_argument("--policy", choices=["strict", "additive-default"], default=None,
                        help="override the game file's missing-coalition policy")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if rule:
            sp.add_argument("--rule", default=None,
                            help="srg | table:PATH | pairs | pairs:PATH | pairs-from:exact|relaxed|lls")
            sp.add_argument("--pairs-from", choices=FIT_METHODS, default=None,
                            help="fit pair values first, then use them as the rule")
        return sp

    sp = game_cmd("check", "test one partition for Nash stability")
    sp.add_argument("partition", help='partition literal, e.g. "{1,4|2|3}"')
    sp.set_defaults(func=cmd_check)

    sp = game_cmd("enumerate", "list every Nash-stable partition")
    sp.set_defaults(func=cmd_enumerate)

    sp = game_cmd("fit", "fit symmetric pair values", rule=False)
    sp.add_argument("--method", choices=FIT_METHODS, required=True)
    sp.set_defaults(func=cmd_fit)

    for name, func, help_ in (("dynamics", cmd_dynamics, "run best-reply dynamics"),
                              ("social", cmd_social, "social optimum and anarchy gap")):
        sp = game_cmd(name, help_)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--max-rounds", type=int, default=1000)
        if name == "dynamics":
            sp.add_argument("--trace", default=None, help="write the step trace to this path")
        sp.set_defaults(func=func)

    sp = game_cmd("pipeline", "fit pair values, then run dynamics and report the gap", rule=False)
    sp.add_argument("--method", choices=FIT_METHODS, default="relaxed")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-rounds", type=int, default=1000)
    sp.set_defaults(func=cmd_pipeline)

    sp = sub.add_parser("repro-paper", help="check the four-player reference results")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--game", default=None, help="substitute a game file for the built-in fixture")
    sp.set_defaults(func=cmd_repro)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    if getattr(args, "max_rounds", 1) < 1:
        print("error: --max-rounds must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (HedonicError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
