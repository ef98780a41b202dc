"""Rounds to convergence of best-reply dynamics on random games, plus the share that never settle."""
import argparse

import numpy as np

from hedonic.dynamics import run_dynamics
from hedonic.game import AdditivePairwise, SymmetricRelativeGain
from hedonic.gamefile import fit_pairs
from hedonic.social import social_optimum, social_value
from hedonic.stability import find_nash_stable

from stable_existence import sample


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--games", type=int, default=200)
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--max-rounds", type=int, default=500)
    ap.add_argument("--rule", choices=["srg", "relaxed", "lls"], default="srg")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    rounds, gaps = [], []
    runs = stuck = stuck_with_stable = 0
    for _ in range(args.games):
        u = sample(rng, args.n, -1.0, 1.0)
        rule = SymmetricRelativeGain(u) if args.rule == "srg" else AdditivePairwise(u, fit_pairs(u, args.rule))
        has_stable = bool(find_nash_stable(u, rule))
        opt = social_optimum(u)[1]
        for s in range(args.seeds):
            runs += 1
            tr = run_dynamics(u, rule, s, args.max_rounds)
            if tr.converged:
                rounds.append(tr.rounds)
                gaps.append(opt - social_value(u, tr.partition))
            else:
                stuck += 1
                stuck_with_stable += has_stable
    r = np.array(rounds)
    print(f"rule={args.rule} n={args.n} runs={runs}")
    print(f"converged {len(r)} ({len(r) / runs:.3f}); stuck {stuck}, of which {stuck_with_stable} had a stable partition")
    if len(r):
        q = np.percentile(r, [50, 90, 99])
        print(f"rounds: mean {r.mean():.2f}, median {q[0]:.0f}, p90 {q[1]:.0f}, p99 {q[2]:.0f}, max {r.max()}")
        g = np.array(gaps)
        print(f"gap to social optimum: mean {g.mean():.4f}, max {g.max():.4f}, zero-gap share {np.mean(g < 1e-9):.3f}")


if __name__ == "__main__":
    main()
