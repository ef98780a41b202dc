"""Nash stability of partitions and grand-coalition conditions."""
from __future__ import annotations

from dataclasses import dataclass

from .coalitions import Partition, bit, enumerate_partitions, format_coalition, members, _check_enum_limit
from .game import EPS, AllocationRule, CharacteristicFunction, marginal_utility, payoff_table


@dataclass(frozen=True)
class DeviationWitness:
    """Player ``player`` gains by leaving ``source`` for ``to_block`` ∪ {player}.

    ``to_block == 0`` encodes a move to a fresh singleton.
    """

    player: int
    source: int
    to_block: int
    gain_before: float
    gain_after: float

    def __str__(self):
        target = format_coalition(self.to_block) if self.to_block else "{} (alone)"
        return (f"player {self.player} -> {target}: "
                f"{self.gain_before:.9g} -> {self.gain_after:.9g}")


def _scan(payoff, partition: Partition, eps: float) -> DeviationWitness | None:
    blocks = partition.blocks
    owner = {}
    for blk in blocks:
        for i in members(blk):
            owner[i] = blk
    for i in range(1, partition.n + 1):
        own = owner[i]
        b = bit(i)
        here = payoff(i, own)
        for blk in blocks:
            if blk == own:
                continue
            there = payoff(i, blk | b)
            if there > here + eps:
                return DeviationWitness(i, own, blk, here, there)
        if own != b:
            there = payoff(i, b)
            if there > here + eps:
                return DeviationWitness(i, own, 0, here, there)
    return None


def is_nash_stable(u: CharacteristicFunction, rule: AllocationRule, partition: Partition,
                   eps: float = EPS) -> tuple[bool, DeviationWitness | None]:
    """Check every unilateral move; on failure return the first profitable one.

    Moves are scanned by player, then by target block (in partition order),
    with the move to a fresh singleton last.
    """
    if partition.n != u.n:
        raise ValueError(f"partition is over {partition.n} players, game has {u.n}")
    w = _scan(rule.value, partition, eps)
    return w is None, w


def find_nash_stable(u: CharacteristicFunction, rule: AllocationRule, eps: float = EPS) -> list[Partition]:
    """All Nash-stable partitions, in enumeration order."""
    _check_enum_limit(u.n)
    table = payoff_table(rule)

    def payoff(i, mask):
        return table[i][mask]

    return [p for p in enumerate_partitions(u.n) if _scan(payoff, p, eps) is None]


def is_essential(u: CharacteristicFunction, eps: float = EPS) -> bool:
    return marginal_utility(u, u.grand) >= -eps


def grand_coalition_stable(u: CharacteristicFunction, eps: float = EPS) -> tuple[bool, dict[int, float] | None]:
    """Feasible iff the game is essential; witness splits Δ(N) equally."""
    if not is_essential(u, eps):
        return False, None
    share = marginal_utility(u, u.grand) / u.n
    return True, {i: u.singleton(i) + share for i in range(1, u.n + 1)}
