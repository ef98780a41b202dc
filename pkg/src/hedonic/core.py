"""Constraint systems and fits for pairwise (additively separable) allocations.

Every coalition S with |S| ≥ 2 contributes one row ``Σ_{i<j∈S} v(i,j) ⋚ ½Δ(S)``
to the pair system. Rows are in ascending bitmask order; columns follow the
row-major pair order of :func:`hedonic.game.pair_list`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coalitions import Partition, bit, enumerate_partitions, full_mask, members, size, subsets_containing
from .errors import GameError, LimitExceeded, NumericalFailure
from .game import CharacteristicFunction, PairValues, TableRule, marginal_utility, pair_list
from .lp import EQ, FEAS_TOL, GE, LE, LinearProgram, LpStatus, check_feasible_equalities, solve_least_squares, solve_lp

MAX_FIT_PLAYERS = 16
MAX_NCORE_PLAYERS = 8


@dataclass(frozen=True)
class PairSystem:
    A: np.ndarray
    b: np.ndarray
    rows: tuple[int, ...]          # coalition mask of each row
    n: int

    @property
    def c(self) -> np.ndarray:
        return np.ones(self.A.shape[1])

    @property
    def delta(self) -> np.ndarray:
        """Δ(S) per row (twice the right-hand side)."""
        return 2.0 * self.b


@dataclass(frozen=True)
class BalancednessCertificate:
    weights: dict[int, float]
    slack: float                   # Δ(N) − Σ w_S Δ(S)


def _check_fit_size(u: CharacteristicFunction) -> None:
    if u.n < 2:
        raise GameError("pair systems need at least two players")
    if u.n > MAX_FIT_PLAYERS:
        raise LimitExceeded(f"pair systems are capped at {MAX_FIT_PLAYERS} players (got {u.n})")


def build_pair_system(u: CharacteristicFunction) -> PairSystem:
    _check_fit_size(u)
    u.require_complete()
    n = u.n
    pairs = pair_list(n)
    pair_masks = np.array([bit(i) | bit(j) for i, j in pairs], dtype=np.int64)
    rows = tuple(m for m in range(1, 1 << n) if m & (m - 1))
    masks = np.array(rows, dtype=np.int64)
    A = ((masks[:, None] & pair_masks[None, :]) == pair_masks[None, :]).astype(float)
    b = np.array([0.5 * marginal_utility(u, m) for m in rows])
    return PairSystem(A, b, rows, n)


def exact_separable_fit(u: CharacteristicFunction) -> PairValues | None:
    """Pair values reproducing every Δ(S) exactly, or None if there are none."""
    sys_ = build_pair_system(u)
    x = check_feasible_equalities(sys_.A, sys_.b)
    if x is None:
        return None
    return PairValues(u.n, x)


def validate_certificate(u: CharacteristicFunction, weights: dict[int, float],
                         tol: float = FEAS_TOL) -> BalancednessCertificate | None:
    """Accept ``weights`` iff every pair is covered with total weight 1 and
    Σ w_S Δ(S) ≤ Δ(N)."""
    n = u.n
    for i, j in pair_list(n):
        pm = bit(i) | bit(j)
        cover = sum(w for s, w in weights.items() if s & pm == pm)
        if abs(cover - 1.0) > tol:
            return None
    total = sum(w * marginal_utility(u, s) for s, w in weights.items())
    slack = marginal_utility(u, full_mask(n)) - total
    if slack < -tol:
        return None
    return BalancednessCertificate(dict(weights), slack)


def balancedness_check(u: CharacteristicFunction) -> BalancednessCertificate | None:
    """Search for free-signed weights w_S with the balancing property.

    Phase-one feasibility over the dual system ``wA = 1`` together with
    ``Σ w_S Δ(S) ≤ Δ(N)``.
    """
    sys_ = build_pair_system(u)
    m, k = sys_.A.shape
    dn = marginal_utility(u, full_mask(u.n))
    A = np.vstack([sys_.A.T, sys_.delta[None, :]])
    lp = LinearProgram(np.zeros(m), A, [EQ] * k + [LE], np.concatenate([np.ones(k), [dn]]))
    sol = solve_lp(lp)
    if sol.status is LpStatus.INFEASIBLE:
        return None
    if not sol.optimal:
        raise NumericalFailure(f"balancedness search ended {sol.status.value}")
    w = {s: float(x) for s, x in zip(sys_.rows, sol.point) if x != 0.0}
    return BalancednessCertificate(w, float(dn - sys_.delta @ sol.point))


def dual_bound(u: CharacteristicFunction) -> float | None:
    """max Σ w_S Δ(S) over all balancing weights; None when unbounded.

    Bounded exactly when the exact pairwise fit exists, and then equals Δ(N).
    """
    sys_ = build_pair_system(u)
    m, k = sys_.A.shape
    lp = LinearProgram(sys_.delta, sys_.A.T, [EQ] * k, np.ones(k))
    sol = solve_lp(lp)
    if sol.status is LpStatus.UNBOUNDED:
        return None
    if not sol.optimal:
        raise NumericalFailure(f"dual bound ended {sol.status.value}")
    return sol.objective


def relaxed_efficiency_fit(u: CharacteristicFunction) -> tuple[PairValues, float]:
    """Maximise Σ v subject to every coalition getting at most its surplus."""
    sys_ = build_pair_system(u)
    lp = LinearProgram(sys_.c, sys_.A, [LE] * sys_.A.shape[0], sys_.b)
    sol = solve_lp(lp)
    if not sol.optimal:
        raise NumericalFailure(f"relaxed-efficiency program ended {sol.status.value}")
    return PairValues(u.n, sol.point), sol.objective


def lls_fit(u: CharacteristicFunction) -> tuple[PairValues, float]:
    sys_ = build_pair_system(u)
    x, res = solve_least_squares(sys_.A, sys_.b)
    return PairValues(u.n, x), res


def _ncore_program(u: CharacteristicFunction, partition: Partition):
    n = u.n
    index: dict[tuple[int, int], int] = {}
    for i in range(1, n + 1):
        for s in subsets_containing(n, i):
            index[(i, s)] = len(index)
    kappa = len(index)
    rows, senses, rhs = [], [], []
    for s in range(1, 1 << n):
        r = np.zeros(kappa)
        for i in members(s):
            r[index[(i, s)]] = 1.0
        rows.append(r)
        senses.append(EQ)
        rhs.append(u(s))
    for i in range(1, n + 1):
        own = partition.block_of(i)
        targets = [blk | bit(i) for blk in partition.blocks if blk != own]
        if own != bit(i):
            targets.append(bit(i))
        for t in targets:
            r = np.zeros(kappa)
            r[index[(i, own)]] = 1.0
            r[index[(i, t)]] = -1.0
            rows.append(r)
            senses.append(GE)
            rhs.append(0.0)
    # the min-total objective is constant under efficiency; any feasible point will do
    lp = LinearProgram(-np.ones(kappa), np.array(rows), senses, np.array(rhs))
    return lp, index


def ncore_feasible(u: CharacteristicFunction) -> tuple[Partition, TableRule] | None:
    """First partition (enumeration order) that some efficient table makes Nash-stable."""
    if u.n > MAX_NCORE_PLAYERS:
        raise LimitExceeded(f"Nash-stable core search is capped at {MAX_NCORE_PLAYERS} players (got {u.n})")
    u.require_complete()
    for p in enumerate_partitions(u.n):
        lp, index = _ncore_program(u, p)
        sol = solve_lp(lp)
        if sol.status is LpStatus.INFEASIBLE:
            continue
        if not sol.optimal:
            raise NumericalFailure(f"Nash-stable core program for {p} ended {sol.status.value}")
        phi = {key: float(sol.point[k]) for key, k in index.items()}
        return p, TableRule(u.n, phi)
    return None
