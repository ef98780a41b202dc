"""Walk through the four-player reference game: equal split, pair fits, social optimum."""
import argparse

from hedonic import fixtures as fx
from hedonic.coalitions import format_coalition
from hedonic.core import lls_fit, relaxed_efficiency_fit
from hedonic.dynamics import run_dynamics
from hedonic.game import AdditivePairwise, SymmetricRelativeGain, preference_list
from hedonic.social import social_optimum, social_value
from hedonic.stability import find_nash_stable


def show_prefs(rule, n):
    for i in range(1, n + 1):
        rows = preference_list(rule, i, drop_negative=True)
        print(f"  player {i}: " + " > ".join(f"{format_coalition(m)}={x:.4f}" for m, x in rows))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=10)
    args = ap.parse_args()

    u = fx.four_player_game()
    opt_p, opt_v = social_optimum(u)
    print(f"social optimum {opt_v:.4f} at {opt_p}\n")

    srg = SymmetricRelativeGain(u)
    print(f"equal split: {len(find_nash_stable(u, srg))} stable partitions")
    show_prefs(srg, u.n)

    fits = {"relaxed": relaxed_efficiency_fit(u), "lls": lls_fit(u), "rounded": (fx.rounded_pairs(), None)}
    for name, (v, score) in fits.items():
        rule = AdditivePairwise(u, v)
        stable = find_nash_stable(u, rule)
        print(f"\n{name} pairs v = {[round(float(x), 4) for x in v.vector]}" + (f", score {score:.6g}" if score is not None else ""))
        print(f"  stable: {', '.join(map(str, stable)) or 'none'}")
        for seed in range(args.seeds):
            tr = run_dynamics(u, rule, seed, 1000)
            if tr.converged:
                sv = social_value(u, tr.partition)
                print(f"  seed {seed}: {tr.partition} after {tr.rounds} rounds, S_u = {sv:.4f}, gap {opt_v - sv:.4f}")
            else:
                print(f"  seed {seed}: no convergence")


if __name__ == "__main__":
    main()
