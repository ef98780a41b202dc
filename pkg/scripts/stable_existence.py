"""Fraction of random games with a Nash-stable partition under equal surplus split, by player count."""
import argparse

import numpy as np

from hedonic.game import CharacteristicFunction, SymmetricRelativeGain
from hedonic.stability import find_nash_stable


def sample(rng, n, low, high):
    delta = {m: rng.uniform(low, high) for m in range(1, 1 << n) if m & (m - 1)}
    return CharacteristicFunction.from_delta(rng.uniform(0, 2, n), delta, n)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--games", type=int, default=500)
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--low", type=float, default=-1.0)
    ap.add_argument("--high", type=float, default=1.0)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    print("n  games  with_stable  mean_count")
    for n in range(2, args.max_n + 1):
        counts = []
        for _ in range(args.games):
            u = sample(rng, n, args.low, args.high)
            counts.append(len(find_nash_stable(u, SymmetricRelativeGain(u))))
        counts = np.array(counts)
        print(f"{n:<2} {args.games:<6} {np.mean(counts > 0):<12.3f} {counts.mean():.2f}")


if __name__ == "__main__":
    main()
