"""Characteristic functions, allocation rules and the preferences they induce."""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .coalitions import (
    MAX_PLAYERS,
    bit,
    format_coalition,
    full_mask,
    mask_of,
    members,
    size,
    subsets_containing,
)
from .errors import GameError, MissingTableEntry, PlayerNotInCoalition, UnknownCoalition

EPS = 1e-9

STRICT = "strict"
ADDITIVE_DEFAULT = "additive-default"
POLICIES = (STRICT, ADDITIVE_DEFAULT)


@dataclass(frozen=True)
class CharacteristicFunction:
    """Coalition utilities u(S) keyed by bitmask.

    With ``policy="additive-default"`` an undefined u(S) falls back to the sum
    of singleton values, i.e. zero marginal utility.
    """

    n: int
    values: Mapping[int, float]
    policy: str = STRICT

    def __post_init__(self):
        if not 1 <= self.n <= MAX_PLAYERS:
            raise GameError(f"player count must be in 1..{MAX_PLAYERS}")
        if self.policy not in POLICIES:
            raise GameError(f"unknown policy {self.policy!r}")
        top = full_mask(self.n)
        vals = {}
        for mask, val in self.values.items():
            if mask <= 0 or mask & ~top:
                raise GameError(f"coalition {format_coalition(mask)} is not a subset of 1..{self.n}")
            val = float(val)
            if not np.isfinite(val):
                raise GameError(f"u{format_coalition(mask)} is not finite")
            vals[mask] = val
        for i in range(1, self.n + 1):
            if bit(i) not in vals:
                raise GameError(f"singleton value u({i}) missing")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_delta(cls, singles: Mapping[int, float] | list[float], delta: Mapping[int, float],
                   n: int | None = None, policy: str = STRICT) -> "CharacteristicFunction":
        """Build u from singleton values and marginal utilities Δ(S)."""
        if not isinstance(singles, Mapping):
            singles = {i: v for i, v in enumerate(singles, start=1)}
        n = n if n is not None else max(singles)
        vals = {bit(i): float(v) for i, v in singles.items()}
        for mask, d in delta.items():
            if size(mask) < 2:
                raise GameError("marginal utilities are only given for coalitions of two or more")
            vals[mask] = sum(vals[bit(i)] for i in members(mask)) + float(d)
        return cls(n, vals, policy)

    @property
    def grand(self) -> int:
        return full_mask(self.n)

    def singleton(self, i: int) -> float:
        return self.values[bit(i)]

    def __call__(self, mask: int) -> float:
        try:
            return self.values[mask]
        except KeyError:
            pass
        if mask <= 0 or mask & ~self.grand:
            raise UnknownCoalition(f"{format_coalition(mask)} is not a coalition of this game")
        if self.policy == ADDITIVE_DEFAULT:
            return sum(self.values[bit(i)] for i in members(mask))
        raise UnknownCoalition(f"u{format_coalition(mask)} is not defined")

    def is_complete(self) -> bool:
        return len(self.values) == (1 << self.n) - 1

    def require_complete(self) -> None:
        if self.policy == STRICT and not self.is_complete():
            for mask in range(1, 1 << self.n):
                if mask not in self.values:
                    raise UnknownCoalition(f"u{format_coalition(mask)} is not defined")

    def relabel(self, perm: Mapping[int, int]) -> "CharacteristicFunction":
        """Game with player i renamed to perm[i]."""
        vals = {mask_of(perm[i] for i in members(m)): v for m, v in self.values.items()}
        return CharacteristicFunction(self.n, vals, self.policy)


def marginal_utility(u: CharacteristicFunction, mask: int) -> float:
    """Δ(S) = u(S) − Σ_{i∈S} u(i)."""
    if mask & (mask - 1) == 0:
        if mask == 0:
            raise GameError("empty coalition")
        u(mask)
        return 0.0
    return math.fsum([u(mask)] + [-u.singleton(i) for i in members(mask)])


def pair_list(n: int) -> list[tuple[int, int]]:
    """Pairs (i, j), i < j, in row-major order: (1,2), (1,3), ..., (2,3), ..."""
    return list(itertools.combinations(range(1, n + 1), 2))


def pair_index(i: int, j: int, n: int) -> int:
    if i > j:
        i, j = j, i
    # rows before i contribute (n - 1) + (n - 2) + ... + (n - i + 1)
    return (i - 1) * (2 * n - i) // 2 + (j - i - 1)


@dataclass(frozen=True)
class PairValues:
    """Symmetric pair values v(i, j), stored as a vector in pair order."""

    n: int
    vector: np.ndarray

    def __post_init__(self):
        vec = np.array(self.vector, dtype=float).reshape(-1)
        if vec.shape[0] != self.n * (self.n - 1) // 2:
            raise GameError(f"expected {self.n * (self.n - 1) // 2} pair values, got {vec.shape[0]}")
        vec.setflags(write=False)
        object.__setattr__(self, "vector", vec)

    @classmethod
    def from_mapping(cls, n: int, v: Mapping[tuple[int, int], float]) -> "PairValues":
        vec = np.zeros(n * (n - 1) // 2)
        seen = set()
        for (i, j), val in v.items():
            if i == j or not (1 <= i <= n and 1 <= j <= n):
                raise GameError(f"bad pair ({i},{j})")
            k = pair_index(i, j, n)
            if k in seen:
                raise GameError(f"pair ({min(i, j)},{max(i, j)}) given twice")
            seen.add(k)
            vec[k] = val
        if len(seen) != vec.shape[0]:
            missing = [p for k, p in enumerate(pair_list(n)) if k not in seen]
            raise GameError(f"pair value v{missing[0]} missing")
        return cls(n, vec)

    def __call__(self, i: int, j: int) -> float:
        if i == j:
            return 0.0
        return float(self.vector[pair_index(i, j, self.n)])

    def as_dict(self) -> dict[tuple[int, int], float]:
        return {p: float(x) for p, x in zip(pair_list(self.n), self.vector)}


class Preference(enum.IntEnum):
    STRICTLY_DISPREFERRED = -1
    INDIFFERENT = 0
    STRICTLY_PREFERS = 1


def _check_member(i: int, mask: int) -> None:
    if not mask & bit(i):
        raise PlayerNotInCoalition(f"player {i} is not in {format_coalition(mask)}")


class AllocationRule:
    """Maps (player, coalition) to that player's payoff φ_i^S."""

    kind: str
    n: int

    def value(self, i: int, mask: int) -> float:
        raise NotImplementedError

    def __call__(self, i: int, mask: int) -> float:
        return self.value(i, mask)


@dataclass(frozen=True)
class SymmetricRelativeGain(AllocationRule):
    """φ_i^S = u(i) + Δ(S)/|S|: the coalition surplus split equally."""

    u: CharacteristicFunction
    kind: str = field(default="srg", init=False)

    @property
    def n(self):
        return self.u.n

    def value(self, i, mask):
        _check_member(i, mask)
        if mask == bit(i):
            return self.u.singleton(i)
        return self.u.singleton(i) + marginal_utility(self.u, mask) / size(mask)


@dataclass(frozen=True)
class AdditivePairwise(AllocationRule):
    """φ_i^S = u(i) + Σ_{j∈S} v(i, j)."""

    u: CharacteristicFunction
    v: PairValues
    kind: str = field(default="pairs", init=False)

    def __post_init__(self):
        if self.v.n != self.u.n:
            raise GameError("pair values and game disagree on player count")

    @property
    def n(self):
        return self.u.n

    def value(self, i, mask):
        _check_member(i, mask)
        return self.u.singleton(i) + sum(self.v(i, j) for j in members(mask) if j != i)


@dataclass(frozen=True)
class TableRule(AllocationRule):
    """Explicit payoff table; must hold φ_i^S for every S ∋ i."""

    n: int
    phi: Mapping[tuple[int, int], float]
    kind: str = field(default="table", init=False)

    def __post_init__(self):
        expected = self.n * (1 << (self.n - 1))
        if len(self.phi) != expected:
            for i in range(1, self.n + 1):
                for mask in subsets_containing(self.n, i):
                    if (i, mask) not in self.phi:
                        raise MissingTableEntry(
                            f"table has no entry for player {i} in {format_coalition(mask)}")
            raise GameError(f"table has entries outside the {expected} (player, coalition) slots")
        for (i, mask) in self.phi:
            _check_member(i, mask)

    def value(self, i, mask):
        try:
            return self.phi[(i, mask)]
        except KeyError:
            _check_member(i, mask)
            raise MissingTableEntry(f"table has no entry for player {i} in {format_coalition(mask)}") from None


def alloc_value(rule: AllocationRule, i: int, mask: int) -> float:
    return rule.value(i, mask)


def prefers(rule: AllocationRule, i: int, s: int, t: int, eps: float = EPS) -> Preference:
    """Three-way comparison of player i's payoff in s versus t."""
    a = rule.value(i, s)
    b = rule.value(i, t)
    if a > b + eps:
        return Preference.STRICTLY_PREFERS
    if b > a + eps:
        return Preference.STRICTLY_DISPREFERRED
    return Preference.INDIFFERENT


def preference_list(rule: AllocationRule, i: int, drop_negative: bool = False,
                    eps: float = EPS) -> list[tuple[int, float]]:
    """Coalitions containing i, best first, with payoffs.

    Ties are ordered by bitmask. ``drop_negative`` removes coalitions that pay
    less than staying alone.
    """
    alone = rule.value(i, bit(i))
    rows = [(mask, rule.value(i, mask)) for mask in subsets_containing(rule.n, i)]
    if drop_negative:
        rows = [(m, x) for m, x in rows if x - alone >= -eps]
    rows.sort(key=lambda r: (-r[1], r[0]))
    # equal payoffs up to eps should tie-break by mask, not by rounding noise
    out: list[tuple[int, float]] = []
    group: list[tuple[int, float]] = []
    for r in rows:
        if group and group[0][1] - r[1] > eps:
            out.extend(sorted(group))
            group = []
        group.append(r)
    out.extend(sorted(group))
    return out


def payoff_table(rule: AllocationRule) -> list[list[float]]:
    """Dense table ``t[i][mask]`` (NaN where i ∉ mask) for exhaustive scans."""
    n = rule.n
    table = [[float("nan")] * (1 << n) for _ in range(n + 1)]
    for i in range(1, n + 1):
        row = table[i]
        for mask in subsets_containing(n, i):
            row[mask] = rule.value(i, mask)
    return table
