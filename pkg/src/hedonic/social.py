"""Exact social optimum by subset DP, and the anarchy gap of an equilibrium."""
from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .coalitions import Partition, full_mask
from .errors import LimitExceeded
from .game import AllocationRule, CharacteristicFunction
from .dynamics import run_dynamics

MAX_SOCIAL_PLAYERS = 20
TIE_TOL = 1e-12


def social_value(u: CharacteristicFunction, partition: Partition) -> float:
    return float(sum(u(b) for b in partition.blocks))


@numba.njit(cache=True)
def _lex_less(a, b):
    # member-list lexicographic order of two distinct masks
    x = a ^ b
    p = x & -x
    if a & p:
        # a holds the first differing member; a < b unless b has run out
        return (b & ~((p << 1) - 1)) != 0
    return (a & ~((p << 1) - 1)) == 0


@numba.njit(cache=True)
def _dp(values, n, tie_tol):
    size = 1 << n
    best = np.zeros(size)
    choice = np.zeros(size, dtype=np.int64)
    for mask in range(1, size):
        low = mask & -mask
        rest = mask ^ low
        # enumerate sub-masks of rest; each candidate block is low | sub
        sub = rest
        have = False
        bv = 0.0
        bs = 0
        while True:
            s = low | sub
            val = values[s] + best[mask ^ s]
            if not have or val > bv + tie_tol:
                bv = val
                bs = s
                have = True
            elif val >= bv - tie_tol and _lex_less(s, bs):
                bv = max(bv, val)
                bs = s
            if sub == 0:
                break
            sub = (sub - 1) & rest
        best[mask] = bv
        choice[mask] = bs
    return best, choice


def social_optimum(u: CharacteristicFunction) -> tuple[Partition, float]:
    """Partition maximising Σ u(S); value ties go to the lexicographically smallest block list."""
    n = u.n
    if n > MAX_SOCIAL_PLAYERS:
        raise LimitExceeded(f"social optimum is capped at {MAX_SOCIAL_PLAYERS} players (got {n})")
    u.require_complete()
    values = np.zeros(1 << n)
    for mask in range(1, 1 << n):
        values[mask] = u(mask)
    best, choice = _dp(values, n, TIE_TOL)
    blocks = []
    mask = full_mask(n)
    while mask:
        s = int(choice[mask])
        blocks.append(s)
        mask ^= s
    p = Partition(tuple(blocks), n)
    return p, social_value(u, p)


@dataclass(frozen=True)
class SocialReport:
    optimum_value: float
    optimum_partition: Partition
    achieved_value: float | None = None
    achieved_partition: Partition | None = None
    gap: float | None = None
    ratio: float | None = None


def social_report(u: CharacteristicFunction, achieved: Partition | None = None) -> SocialReport:
    """Optimum against an (equilibrium) partition: additive gap and ratio S_u*/S_u."""
    opt_p, opt_v = social_optimum(u)
    if achieved is None:
        return SocialReport(opt_v, opt_p)
    val = social_value(u, achieved)
    ratio = opt_v / val if val != 0 else None
    return SocialReport(opt_v, opt_p, val, achieved, opt_v - val, ratio)


def anarchy_gap(u: CharacteristicFunction, rule: AllocationRule, seed: int, max_rounds: int) -> SocialReport:
    trace = run_dynamics(u, rule, seed, max_rounds)
    return social_report(u, trace.partition if trace.converged else None)
