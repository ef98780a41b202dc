"""Dense two-phase simplex and least squares.

Programs are stated in maximisation form over free-signed variables. The
simplex splits each variable into a difference of non-negatives, adds one
slack per inequality and one artificial per row, and pivots with Bland's
rule, so the same input always follows the same pivot sequence.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence, TextIO

import numpy as np

from .errors import GameError, NumericalFailure, NumericalSingularity

PIVOT_TOL = 1e-10
FEAS_TOL = 1e-7
MAX_ITER = 10**6
MAX_ROWS = 4096
MAX_VARS = 1024

LE, EQ, GE = "<=", "=", ">="


class LpStatus(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    NUMERICAL_FAILURE = "numerical-failure"


@dataclass
class LinearProgram:
    """maximize ``objective @ x`` subject to ``A[r] @ x  senses[r]  rhs[r]``."""

    objective: np.ndarray
    A: np.ndarray
    senses: Sequence[str]
    rhs: np.ndarray

    def __post_init__(self):
        self.objective = np.asarray(self.objective, dtype=float).reshape(-1)
        nvar = self.objective.shape[0]
        self.A = np.asarray(self.A, dtype=float).reshape(-1, nvar)
        self.rhs = np.asarray(self.rhs, dtype=float).reshape(-1)
        self.senses = list(self.senses)
        m = self.A.shape[0]
        if len(self.senses) != m or self.rhs.shape[0] != m:
            raise GameError("constraint rows, senses and right-hand sides must have equal length")
        bad = [s for s in self.senses if s not in (LE, EQ, GE)]
        if bad:
            raise GameError(f"unknown relation {bad[0]!r}")
        if not (np.all(np.isfinite(self.A)) and np.all(np.isfinite(self.rhs))
                and np.all(np.isfinite(self.objective))):
            raise GameError("linear program has non-finite coefficients")

    @classmethod
    def build(cls, objective, A_ub=None, b_ub=None, A_eq=None, b_eq=None, A_ge=None, b_ge=None):
        objective = np.asarray(objective, dtype=float)
        nvar = objective.shape[0]
        rows, senses, rhs = [], [], []
        for A, b, s in ((A_ub, b_ub, LE), (A_eq, b_eq, EQ), (A_ge, b_ge, GE)):
            if A is None:
                continue
            A = np.asarray(A, dtype=float).reshape(-1, nvar)
            rows.append(A)
            senses += [s] * A.shape[0]
            rhs.append(np.asarray(b, dtype=float).reshape(-1))
        A = np.vstack(rows) if rows else np.zeros((0, nvar))
        b = np.concatenate(rhs) if rhs else np.zeros(0)
        return cls(objective, A, senses, b)

    @property
    def n_vars(self) -> int:
        return self.objective.shape[0]

    def violation(self, x: np.ndarray) -> float:
        """Largest constraint violation at x (0 when feasible)."""
        if self.A.shape[0] == 0:
            return 0.0
        r = self.A @ x - self.rhs
        worst = 0.0
        for s, val in zip(self.senses, r):
            if s == LE:
                v = max(val, 0.0)
            elif s == GE:
                v = max(-val, 0.0)
            else:
                v = abs(val)
            worst = max(worst, v)
        return worst

    def dual(self) -> "LinearProgram":
        """Dual program, also stated as a maximisation over free variables.

        Primal ``max c x`` with free x has dual ``min b y`` s.t. ``A^T y = c``,
        with y ≥ 0 on ≤ rows and y ≤ 0 on ≥ rows. Sign restrictions become
        explicit rows. The returned program maximises ``-b y``, so its optimum
        is the negated dual bound.
        """
        m = self.A.shape[0]
        rows = [self.A.T]
        senses = [EQ] * self.n_vars
        rhs = [self.objective]
        for r, s in enumerate(self.senses):
            if s == EQ:
                continue
            e = np.zeros((1, m))
            e[0, r] = 1.0
            rows.append(e)
            senses.append(GE if s == LE else LE)
            rhs.append(np.zeros(1))
        return LinearProgram(-self.rhs, np.vstack(rows), senses, np.concatenate(rhs))


@dataclass
class LpSolution:
    status: LpStatus
    point: np.ndarray | None = None
    objective: float = float("nan")
    iterations: int = 0
    max_violation: float = float("nan")

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


@dataclass
class _Tableau:
    T: np.ndarray          # (m + 1) x (ncols + 1); last row is the objective, last column the rhs
    basis: list[int]
    pivot_tol: float
    max_iter: int
    debug: TextIO | None
    iterations: int = 0
    allowed: np.ndarray | None = field(default=None)

    def pivot(self, r: int, j: int) -> None:
        T = self.T
        T[r] /= T[r, j]
        col = T[:, j].copy()
        col[r] = 0.0
        T -= np.outer(col, T[r])
        T[:, j] = 0.0
        T[r, j] = 1.0
        self.basis[r] = j

    def run(self) -> str:
        """Maximise until optimal or unbounded. Returns 'optimal' / 'unbounded'."""
        T = self.T
        m = T.shape[0] - 1
        tol = self.pivot_tol
        while True:
            obj = T[-1, :-1]
            cand = obj < -tol
            if self.allowed is not None:
                cand &= self.allowed
            hits = np.flatnonzero(cand)
            if hits.size == 0:
                return "optimal"
            j = int(hits[0])
            col = T[:m, j]
            pos = np.flatnonzero(col > tol)
            if pos.size == 0:
                return "unbounded"
            ratios = T[pos, -1] / col[pos]
            best = ratios.min()
            ties = pos[ratios <= best + tol * max(1.0, abs(best))]
            r = int(min(ties, key=lambda k: self.basis[k]))
            if self.debug is not None:
                self.debug.write(f"{self.iterations},{j},{self.basis[r]},{T[-1, -1]:.9g}\n")
            self.pivot(r, j)
            self.iterations += 1
            if self.iterations >= self.max_iter:
                raise NumericalFailure(f"simplex hit the iteration cap ({self.max_iter})")


def solve_lp(lp: LinearProgram, *, pivot_tol: float = PIVOT_TOL, feas_tol: float = FEAS_TOL,
             max_iter: int = MAX_ITER, debug: TextIO | None = None) -> LpSolution:
    """Solve ``lp``; the status distinguishes infeasible, unbounded and numerical failure.

    ``debug`` receives one line per pivot: ``iteration,entering,leaving,objective``.
    """
    A, b = lp.A, lp.rhs
    m, nv = A.shape
    if m > MAX_ROWS or nv > MAX_VARS:
        raise GameError(f"program is {m}x{nv}; limits are {MAX_ROWS} rows and {MAX_VARS} variables")

    ineq = [r for r, s in enumerate(lp.senses) if s != EQ]
    ns = len(ineq)
    # columns: x+ (nv) | x- (nv) | slacks (ns) | artificials (m)
    ncols = 2 * nv + ns + m
    T = np.zeros((m + 1, ncols + 1))
    T[:m, :nv] = A
    T[:m, nv:2 * nv] = -A
    for k, r in enumerate(ineq):
        T[r, 2 * nv + k] = 1.0 if lp.senses[r] == LE else -1.0
    T[:m, -1] = b
    neg = T[:m, -1] < 0
    T[:m][neg] *= -1.0
    art0 = 2 * nv + ns
    T[:m, art0:art0 + m] = np.eye(m)

    # phase 1: maximise -sum(artificials)
    T[-1, art0:art0 + m] = 1.0
    T[-1] -= T[:m].sum(axis=0)
    tab = _Tableau(T, list(range(art0, art0 + m)), pivot_tol, max_iter, debug)
    try:
        tab.run()
    except NumericalFailure:
        return LpSolution(LpStatus.NUMERICAL_FAILURE, iterations=tab.iterations)
    infeas = -T[-1, -1]
    if infeas > feas_tol:
        return LpSolution(LpStatus.INFEASIBLE, iterations=tab.iterations)

    # drive artificials out of the basis; rows where that is impossible are redundant
    keep = []
    for r in range(m):
        if tab.basis[r] >= art0:
            row = T[r, :art0]
            nz = np.flatnonzero(np.abs(row) > pivot_tol)
            if nz.size:
                tab.pivot(r, int(nz[0]))
                keep.append(r)
        else:
            keep.append(r)
    T = np.vstack([T[keep], T[-1:]])
    T = np.delete(T, np.s_[art0:art0 + m], axis=1)
    tab.T = T
    tab.basis = [tab.basis[r] for r in keep]

    # phase 2
    cost = np.concatenate([lp.objective, -lp.objective, np.zeros(ns)])
    T[-1, :] = 0.0
    T[-1, :-1] = -cost
    for r, j in enumerate(tab.basis):
        if T[-1, j] != 0.0:
            T[-1] -= T[-1, j] * T[r]
    try:
        state = tab.run()
    except NumericalFailure:
        return LpSolution(LpStatus.NUMERICAL_FAILURE, iterations=tab.iterations)
    if state == "unbounded":
        return LpSolution(LpStatus.UNBOUNDED, iterations=tab.iterations)

    y = np.zeros(ncols - m)
    for r, j in enumerate(tab.basis):
        y[j] = T[r, -1]
    x = y[:nv] - y[nv:2 * nv]
    viol = lp.violation(x)
    if viol > feas_tol:
        return LpSolution(LpStatus.NUMERICAL_FAILURE, x, float(lp.objective @ x), tab.iterations, viol)
    return LpSolution(LpStatus.OPTIMAL, x, float(lp.objective @ x), tab.iterations, viol)


def check_feasible_equalities(A, b, *, feas_tol: float = FEAS_TOL, pivot_tol: float = PIVOT_TOL) -> np.ndarray | None:
    """Some x with ``A x = b`` (to ``feas_tol`` in max-norm), or None if none exists."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).reshape(-1)
    lp = LinearProgram(np.zeros(A.shape[1]), A, [EQ] * A.shape[0], b)
    sol = solve_lp(lp, feas_tol=feas_tol, pivot_tol=pivot_tol)
    if sol.status is LpStatus.INFEASIBLE:
        return None
    if sol.status is not LpStatus.OPTIMAL:
        raise NumericalFailure(f"equality feasibility check ended {sol.status.value}")
    return sol.point


def solve_least_squares(A, b, cond_limit: float = 1e12) -> tuple[np.ndarray, float]:
    """Normal-equations least squares: returns (x, ‖b − A x‖)."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).reshape(-1)
    G = A.T @ A
    rhs = A.T @ b
    if G.size and np.linalg.cond(G) > cond_limit:
        raise NumericalSingularity("normal matrix is numerically singular")
    try:
        L = np.linalg.cholesky(G)
        z = np.linalg.solve(L, rhs)
        x = np.linalg.solve(L.T, z)
    except np.linalg.LinAlgError:
        try:
            x = np.linalg.solve(G, rhs)
        except np.linalg.LinAlgError:
            raise NumericalSingularity("normal matrix is singular") from None
    return x, float(np.linalg.norm(b - A @ x))
