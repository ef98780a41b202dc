"""Game files and allocation-rule specs.

A game file is a JSON object::

    {"n": 4,
     "u":     {"1": 0.15, "2": 1.68, "3": 0.01, "4": 1.78},
     "delta": {"1,2": 0.86, "1,3": 0.90, ...},
     "v":     {"1,2": 0.3725, ...},
     "policy": "strict"}

Coalition keys are comma-separated ascending player indices. ``delta`` gives
Δ(S) directly and may not be combined with non-singleton ``u`` entries.
See ``docs/file-formats.md`` for the full grammar.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .coalitions import MAX_PLAYERS, coalition_key, members, parse_coalition_key, size
from .errors import GameError
from .game import (
    POLICIES,
    STRICT,
    AdditivePairwise,
    AllocationRule,
    CharacteristicFunction,
    PairValues,
    SymmetricRelativeGain,
    TableRule,
    marginal_utility,
    pair_list,
)

FIT_METHODS = ("exact", "relaxed", "lls")


@dataclass(frozen=True)
class GameFile:
    u: CharacteristicFunction
    v: PairValues | None = None


def _number(x: Any, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise GameError(f"{where}: expected a number, got {x!r}")
    return float(x)


def _pair_values(n: int, raw: Any, where: str) -> PairValues:
    if not isinstance(raw, dict):
        raise GameError(f"{where} must be an object of pair keys")
    vals = {}
    for key, x in raw.items():
        m = parse_coalition_key(key, n)
        if size(m) != 2:
            raise GameError(f"{where} key {key!r} is not a pair")
        i, j = members(m)
        vals[(i, j)] = _number(x, f"{where}[{key!r}]")
    return PairValues.from_mapping(n, vals)


def parse_game(data: Any, policy: str | None = None) -> GameFile:
    if not isinstance(data, dict):
        raise GameError("game file must hold a JSON object")
    unknown = set(data) - {"n", "u", "delta", "v", "policy"}
    if unknown:
        raise GameError(f"unknown game file field {sorted(unknown)[0]!r}")
    n = data.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or not 1 <= n <= MAX_PLAYERS:
        raise GameError(f"n must be an integer in 1..{MAX_PLAYERS}")
    pol = policy or data.get("policy", STRICT)
    if pol not in POLICIES:
        raise GameError(f"policy must be one of {', '.join(POLICIES)}")
    raw_u = data.get("u")
    if not isinstance(raw_u, dict):
        raise GameError("u must be an object of coalition keys")
    values: dict[int, float] = {}
    for key, x in raw_u.items():
        m = parse_coalition_key(key, n)
        if m in values:
            raise GameError(f"coalition {key!r} given twice")
        values[m] = _number(x, f"u[{key!r}]")
    for i in range(1, n + 1):
        if 1 << (i - 1) not in values:
            raise GameError(f"singleton value u({i}) missing")
    if "delta" in data:
        if any(size(m) > 1 for m in values):
            raise GameError("delta cannot be combined with non-singleton u entries")
        if not isinstance(data["delta"], dict):
            raise GameError("delta must be an object of coalition keys")
        for key, x in data["delta"].items():
            m = parse_coalition_key(key, n)
            if size(m) < 2:
                raise GameError(f"delta key {key!r} must name two or more players")
            if m in values:
                raise GameError(f"coalition {key!r} given twice")
            values[m] = sum(values[1 << (i - 1)] for i in members(m)) + _number(x, f"delta[{key!r}]")
    u = CharacteristicFunction(n, values, pol)
    v = _pair_values(n, data["v"], "v") if "v" in data else None
    return GameFile(u, v)


def load_game(path: str | Path, policy: str | None = None) -> GameFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise GameError(f"cannot read {path}: {e.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise GameError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None
    return parse_game(data, policy)


def game_to_dict(u: CharacteristicFunction, v: PairValues | None = None, as_delta: bool = False) -> dict:
    out: dict[str, Any] = {"n": u.n}
    if as_delta:
        out["u"] = {str(i): u.singleton(i) for i in range(1, u.n + 1)}
        out["delta"] = {coalition_key(m): marginal_utility(u, m)
                        for m in sorted(u.values) if size(m) > 1}
    else:
        out["u"] = {coalition_key(m): x for m, x in sorted(u.values.items())}
    if v is not None:
        out["v"] = pair_values_to_dict(v)
    if u.policy != STRICT:
        out["policy"] = u.policy
    return out


def pair_values_to_dict(v: PairValues) -> dict[str, float]:
    return {f"{i},{j}": float(x) for (i, j), x in zip(pair_list(v.n), v.vector)}


def load_table(path: str | Path, n: int) -> TableRule:
    """Table file: ``{"phi": {"1,2": [phi_1, phi_2], ...}}`` with one value per member."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise GameError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise GameError(f"{path}: invalid JSON ({e.msg})") from None
    raw = data.get("phi") if isinstance(data, dict) else None
    if not isinstance(raw, dict):
        raise GameError(f"{path}: table file needs a 'phi' object")
    phi = {}
    for key, vals in raw.items():
        m = parse_coalition_key(key, n)
        mem = members(m)
        if not isinstance(vals, list) or len(vals) != len(mem):
            raise GameError(f"{path}: phi[{key!r}] must list one value per member")
        for i, x in zip(mem, vals):
            phi[(i, m)] = _number(x, f"phi[{key!r}]")
    return TableRule(n, phi)


def table_to_dict(rule: TableRule) -> dict:
    out = {}
    for m in range(1, 1 << rule.n):
        out[coalition_key(m)] = [rule.phi[(i, m)] for i in members(m)]
    return {"phi": out}


def fit_pairs(u: CharacteristicFunction, method: str) -> PairValues:
    from .core import exact_separable_fit, lls_fit, relaxed_efficiency_fit

    if method == "exact":
        v = exact_separable_fit(u)
        if v is None:
            raise GameError("exact pairwise fit is infeasible for this game")
        return v
    if method == "relaxed":
        return relaxed_efficiency_fit(u)[0]
    if method == "lls":
        return lls_fit(u)[0]
    raise GameError(f"unknown fit method {method!r}; choose from {', '.join(FIT_METHODS)}")


def parse_rule(spec: str, game: GameFile) -> AllocationRule:
    """Rule spec: ``srg`` | ``table:PATH`` | ``pairs`` | ``pairs:PATH`` | ``pairs-from:METHOD``.

    Bare ``pairs`` takes v from the game file itself.
    """
    u = game.u
    kind, _, arg = spec.partition(":")
    if kind == "srg" and not arg:
        return SymmetricRelativeGain(u)
    if kind == "table" and arg:
        return load_table(arg, u.n)
    if kind == "pairs":
        if not arg:
            if game.v is None:
                raise GameError("rule 'pairs' needs a 'v' section in the game file")
            return AdditivePairwise(u, game.v)
        try:
            data = json.loads(Path(arg).read_text(encoding="utf-8"))
        except OSError as e:
            raise GameError(f"cannot read {arg}: {e.strerror}") from None
        except json.JSONDecodeError as e:
            raise GameError(f"{arg}: invalid JSON ({e.msg})") from None
        if not isinstance(data, dict) or "v" not in data:
            raise GameError(f"{arg}: pairs file needs a 'v' object")
        return AdditivePairwise(u, _pair_values(u.n, data["v"], "v"))
    if kind == "pairs-from" and arg:
        return AdditivePairwise(u, fit_pairs(u, arg))
    raise GameError(f"bad rule spec {spec!r}; expected srg, table:PATH, pairs[:PATH] or pairs-from:exact|relaxed|lls")

