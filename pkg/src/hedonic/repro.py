"""Reproduction checks for the four-player reference game."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import fixtures as fx
from .coalitions import format_coalition, mask_of, members
from .core import build_pair_system, relaxed_efficiency_fit
from .dynamics import run_dynamics
from .game import AdditivePairwise, CharacteristicFunction, SymmetricRelativeGain, preference_list
from .social import social_optimum, social_value
from .stability import find_nash_stable, is_nash_stable

PASS, FAIL, DEVIATION = "PASS", "FAIL", "EXPECTED-DEVIATION"


@dataclass
class Item:
    name: str
    status: str
    detail: str

    def as_dict(self):
        return asdict(self)


def _verdict(ok: bool) -> str:
    return PASS if ok else FAIL


def _count(k: int) -> str:
    return f"{k} Nash-stable partition{'' if k == 1 else 's'}"


def _fmt_list(masks) -> str:
    return " > ".join(format_coalition(m) for m in masks)


def run_repro(u: CharacteristicFunction | None = None, seeds: int = 20, max_rounds: int = 1000) -> list[Item]:
    u = fx.four_player_game() if u is None else u
    srg = SymmetricRelativeGain(u)
    items = []

    stable = find_nash_stable(u, srg)
    items.append(Item("counterexample-empty", _verdict(not stable),
                      f"{_count(len(stable))} under equal surplus split"))

    mismatched = []
    for i, expected in fx.REFERENCE_SRG_PREFERENCES.items():
        got = [m for m, _ in preference_list(srg, i, drop_negative=True)]
        if got != [mask_of(c) for c in expected]:
            mismatched.append(f"player {i}: {_fmt_list(got)}")
    items.append(Item("counterexample-preferences", _verdict(not mismatched),
                      "; ".join(mismatched) or "all four lists match"))

    limit_hits = sum(not run_dynamics(u, srg, s, max_rounds).converged for s in range(seeds))
    items.append(Item("counterexample-no-convergence", _verdict(limit_hits == seeds),
                      f"{limit_hits}/{seeds} seeds hit the {max_rounds}-round limit"))

    v, obj = relaxed_efficiency_fit(u)
    sys_ = build_pair_system(u)
    worst = float(np.max(sys_.A @ v.vector - sys_.b))
    items.append(Item("relaxed-objective",
                      _verdict(abs(obj - fx.RELAXED_OBJECTIVE) <= 1e-3 and worst <= 1e-7),
                      f"objective {obj:.9g} (expect {fx.RELAXED_OBJECTIVE}), max row excess {worst:.3g}"))

    opt_p, opt_v = social_optimum(u)
    claimed = fx.partition(fx.CLAIMED_STABLE)
    claimed_v = social_value(u, claimed)
    ok = (abs(opt_v - fx.OPTIMUM_VALUE) <= 1e-9 and opt_p == fx.partition(fx.OPTIMUM_PARTITION)
          and abs(claimed_v - fx.CLAIMED_STABLE_VALUE) <= 1e-9)
    items.append(Item("social-optimum", _verdict(ok),
                      f"S_u* = {opt_v:.9g} at {opt_p}; S_u({claimed}) = {claimed_v:.9g}"))

    fitted = AdditivePairwise(u, v)
    tr = run_dynamics(u, fitted, 0, max_rounds)
    ok = tr.converged and is_nash_stable(u, fitted, tr.partition)[0]
    detail = (f"converged to {tr.partition} in {tr.rounds} rounds, gap {opt_v - social_value(u, tr.partition):.9g}"
              if tr.converged else "no convergence")
    items.append(Item("relaxed-dynamics", _verdict(ok), detail))

    rounded = AdditivePairwise(u, fx.rounded_pairs())
    st, w = is_nash_stable(u, rounded, claimed)
    got1 = [m for m, _ in preference_list(rounded, 1, drop_negative=True)]
    as_listed = got1 == [mask_of(c) for c in fx.REFERENCE_PAIR_PREFERENCES_1]
    if not st and w.player == 1 and w.to_block == mask_of([2]) and not as_listed:
        items.append(Item("rounded-pairs-claim", DEVIATION,
                          f"{claimed} is not stable under the rounded v ({w}); "
                          f"player 1 ranks {_fmt_list(got1)}"))
    else:
        items.append(Item("rounded-pairs-claim", FAIL,
                          f"expected {claimed} to be broken by player 1 -> {{2}}; stable={st}, witness={w}"))

    found = find_nash_stable(u, rounded)
    items.append(Item("rounded-pairs-stable-exists", _verdict(bool(found)),
                      f"{_count(len(found))}, e.g. {found[0]}" if found else "none"))
    return items


def exit_code(items: list[Item]) -> int:
    return 1 if any(it.status == FAIL for it in items) else 0
