import pytest
from hypothesis import given, strategies as st

from hedonic.coalitions import (
    Partition,
    bell_number,
    enumerate_partitions,
    format_coalition,
    lowest,
    mask_of,
    members,
    parse_coalition_key,
)
from hedonic.errors import GameError, LimitExceeded

from oracles import canon, set_partitions


def test_mask_roundtrip():
    assert mask_of([1, 3, 4]) == 0b1101
    assert members(0b1101) == [1, 3, 4]
    assert format_coalition(0b1101) == "{1,3,4}"
    assert lowest(0b1100) == 3


@given(st.sets(st.integers(1, 32), min_size=1))
def test_members_ascending(players):
    assert members(mask_of(players)) == sorted(players)


@pytest.mark.parametrize("key", ["1,1", "2,1", "", "1,x", "0,2"])
def test_bad_keys(key):
    with pytest.raises(GameError):
        parse_coalition_key(key, 4)


def test_partition_canonical_and_literal():
    p = Partition.from_blocks([[3], [4, 1], [2]], 4)
    assert p.blocks == (mask_of([1, 4]), mask_of([2]), mask_of([3]))
    assert str(p) == "{1,4|2|3}"
    assert Partition.parse("{3|2|1,4}", 4) == p
    assert p.block_of(4) == mask_of([1, 4])


def test_partition_coverage_errors():
    with pytest.raises(GameError, match="player 3 missing"):
        Partition.parse("{1,4|2}", 4)
    with pytest.raises(GameError, match="overlap"):
        Partition.from_blocks([[1, 2], [2, 3]], 3)
    with pytest.raises(GameError):
        Partition.parse("{1,5|2|3|4}", 4)


def test_from_labels():
    assert str(Partition.from_labels([1, 1, 2, 2])) == "{1,2|3,4}"
    assert Partition.from_labels([1, 2, 3, 4]) == Partition.singletons(4)


def test_small_enumerations():
    assert [str(p) for p in enumerate_partitions(1)] == ["{1}"]
    assert [str(p) for p in enumerate_partitions(3)] == [
        "{1,2,3}", "{1,2|3}", "{1,3|2}", "{1|2,3}", "{1|2|3}"]


@pytest.mark.parametrize("n", range(1, 8))
def test_enumeration_matches_independent_generator(n):
    ours = [p.as_lists() for p in enumerate_partitions(n)]
    theirs = sorted(canon(p) for p in set_partitions(range(1, n + 1)))
    assert len(ours) == len(set(map(str, ours)))
    assert sorted(ours) == theirs
    assert len(ours) == bell_number(n)


def test_bell_numbers():
    assert [bell_number(n) for n in range(1, 11)] == [1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975]


def test_enumeration_cap():
    with pytest.raises(LimitExceeded):
        enumerate_partitions(14)
