"""The four-player reference game and the reference figures derived from it."""
from __future__ import annotations

from .coalitions import Partition, mask_of
from .game import CharacteristicFunction, PairValues

SINGLES = {1: 0.15, 2: 1.68, 3: 0.01, 4: 1.78}

DELTA = {
    (1, 2): 0.86, (1, 3): 0.90, (1, 4): 0.87,
    (2, 3): -1.22, (2, 4): -1.25, (3, 4): -1.21,
    (1, 2, 3): 0.27, (1, 2, 4): 0.24, (1, 3, 4): 0.28, (2, 3, 4): -1.84,
    (1, 2, 3, 4): -0.35,
}

# four-decimal pair values for the relaxed-efficiency program, pair order (1,2) .. (3,4)
REFERENCE_V = (0.3725, 0.3724, 0.3723, -0.6100, -0.6250, -0.6050)

# equal-split preference lists, negative-gain coalitions dropped
REFERENCE_SRG_PREFERENCES = {
    1: [(1, 3), (1, 4), (1, 2), (1, 3, 4), (1, 2, 3), (1, 2, 4), (1,)],
    2: [(1, 2), (1, 2, 3), (1, 2, 4), (2,)],
    3: [(1, 3), (1, 3, 4), (1, 2, 3), (3,)],
    4: [(1, 4), (1, 3, 4), (1, 2, 4), (4,)],
}

REFERENCE_PAIR_PREFERENCES_1 = [(1, 2, 3, 4), (1, 2, 3), (1, 2, 4), (1, 4), (1, 3, 4), (1, 2), (1,)]

CLAIMED_STABLE = ((1, 4), (2,), (3,))
CLAIMED_STABLE_VALUE = 4.49
OPTIMUM_PARTITION = ((1, 3), (2,), (4,))
OPTIMUM_VALUE = 4.52
RELAXED_OBJECTIVE = -0.7225


def four_player_game(delta: dict | None = None) -> CharacteristicFunction:
    d = DELTA if delta is None else delta
    return CharacteristicFunction.from_delta(SINGLES, {mask_of(k): x for k, x in d.items()}, n=4)


def rounded_pairs() -> PairValues:
    return PairValues(4, REFERENCE_V)


def partition(blocks) -> Partition:
    return Partition.from_blocks(blocks, 4)
