import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hedonic import fixtures as fx
from hedonic.coalitions import bit, mask_of, members, subsets_containing
from hedonic.errors import GameError, MissingTableEntry, PlayerNotInCoalition, UnknownCoalition
from hedonic.game import (
    AdditivePairwise,
    CharacteristicFunction,
    PairValues,
    Preference,
    SymmetricRelativeGain,
    TableRule,
    alloc_value,
    marginal_utility,
    pair_index,
    pair_list,
    preference_list,
    prefers,
)


@st.composite
def games(draw, n_min=1, n_max=6):
    n = draw(st.integers(n_min, n_max))
    vals = draw(st.lists(st.floats(-5, 5, allow_nan=False), min_size=(1 << n) - 1, max_size=(1 << n) - 1))
    return CharacteristicFunction(n, {m: vals[m - 1] for m in range(1, 1 << n)})


@st.composite
def games_with_pairs(draw, n_max=6):
    u = draw(games(n_min=2, n_max=n_max))
    k = u.n * (u.n - 1) // 2
    v = draw(st.lists(st.floats(-3, 3, allow_nan=False), min_size=k, max_size=k))
    return u, PairValues(u.n, v)


def test_marginal_utility_values(four):
    assert marginal_utility(four, mask_of([1, 4])) == pytest.approx(0.87, abs=1e-12)
    assert marginal_utility(four, mask_of([3])) == 0.0
    additive = CharacteristicFunction(3, {m: sum(members(m)) for m in range(1, 8)})
    assert all(marginal_utility(additive, m) == 0 for m in range(1, 8))


def test_missing_values_policy():
    u = CharacteristicFunction(3, {1: 1.0, 2: 2.0, 4: 3.0})
    with pytest.raises(UnknownCoalition):
        u(0b011)
    d = CharacteristicFunction(3, {1: 1.0, 2: 2.0, 4: 3.0}, policy="additive-default")
    assert d(0b111) == 6.0
    assert marginal_utility(d, 0b101) == 0.0
    with pytest.raises(GameError, match="u\\(2\\)"):
        CharacteristicFunction(2, {1: 0.0})


def test_pair_order():
    assert pair_list(4) == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    for n in range(2, 9):
        assert [pair_index(i, j, n) for i, j in pair_list(n)] == list(range(n * (n - 1) // 2))
    v = PairValues(4, fx.REFERENCE_V)
    assert v(2, 1) == v(1, 2) == 0.3725
    assert v(3, 3) == 0.0


def test_srg_values(four):
    srg = SymmetricRelativeGain(four)
    assert alloc_value(srg, 1, mask_of([1, 3])) == pytest.approx(0.15 + 0.45, abs=1e-12)
    for i in range(1, 5):
        assert alloc_value(srg, i, bit(i)) == four.singleton(i)
    with pytest.raises(PlayerNotInCoalition):
        srg.value(2, mask_of([1, 3]))


def test_pairwise_value(four):
    rule = AdditivePairwise(four, fx.rounded_pairs())
    assert rule.value(2, mask_of([1, 2])) == pytest.approx(2.0525, abs=1e-12)


def test_prefers_examples(four):
    srg = SymmetricRelativeGain(four)
    assert prefers(srg, 1, mask_of([1, 3]), mask_of([1, 4])) is Preference.STRICTLY_PREFERS
    assert prefers(srg, 3, mask_of([1, 3, 4]), bit(3)) is Preference.STRICTLY_PREFERS
    assert prefers(srg, 3, bit(3), mask_of([1, 3, 4])) is Preference.STRICTLY_DISPREFERRED
    assert prefers(srg, 2, mask_of([1, 2]), mask_of([2, 1])) is Preference.INDIFFERENT


def test_table_rule_completeness():
    phi = {(i, m): 0.0 for i in (1, 2) for m in subsets_containing(2, i)}
    TableRule(2, phi)
    del phi[(2, 0b11)]
    with pytest.raises(MissingTableEntry):
        TableRule(2, phi)


@given(games())
def test_srg_efficiency(u):
    # within 4 ulp at the scale |u(S)| + sum |u(i)|
    srg = SymmetricRelativeGain(u)
    for m in range(1, 1 << u.n):
        mem = members(m)
        total = math.fsum(srg.value(i, m) for i in mem)
        scale = abs(u(m)) + sum(abs(u.singleton(i)) for i in mem)
        assert abs(total - u(m)) <= 4 * np.spacing(scale)


@given(games_with_pairs())
def test_pairwise_sum_identity(data):
    u, v = data
    rule = AdditivePairwise(u, v)
    for m in range(1, 1 << u.n):
        mem = members(m)
        total = sum(rule.value(i, m) for i in mem)
        expected = sum(u.singleton(i) for i in mem) + 2 * sum(v(i, j) for i in mem for j in mem if i < j)
        assert total == pytest.approx(expected, abs=1e-9)


@given(games(n_min=2), st.data())
def test_prefers_ignores_member_order(u, data):
    srg = SymmetricRelativeGain(u)
    i = data.draw(st.integers(1, u.n))
    s = data.draw(st.sets(st.integers(1, u.n))) | {i}
    t = data.draw(st.sets(st.integers(1, u.n))) | {i}
    a = prefers(srg, i, mask_of(sorted(s)), mask_of(sorted(t)))
    b = prefers(srg, i, mask_of(sorted(s, reverse=True)), mask_of(list(t)[::-1]))
    assert a is b
    assert prefers(srg, i, mask_of(t), mask_of(s)) == -a


@given(games(n_min=2, n_max=5))
def test_alloc_is_deterministic(u):
    srg = SymmetricRelativeGain(u)
    for m in range(1, 1 << u.n):
        for i in members(m):
            assert srg.value(i, m) == srg.value(i, m)


def test_preference_list_drop_negative(four):
    srg = SymmetricRelativeGain(four)
    got = [members(m) for m, _ in preference_list(srg, 2, drop_negative=True)]
    assert got == [[1, 2], [1, 2, 3], [1, 2, 4], [2]]


def test_relabel():
    u = CharacteristicFunction(2, {1: 1.0, 2: 2.0, 3: 5.0})
    r = u.relabel({1: 2, 2: 1})
    assert r.singleton(1) == 2.0 and r(3) == 5.0
