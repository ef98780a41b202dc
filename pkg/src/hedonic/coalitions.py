"""Bitmask coalitions and set partitions.

A coalition is a plain ``int``: player ``i`` (1-based) is a member iff bit
``i - 1`` is set. Partitions are kept canonical (blocks ordered by their
smallest member) so equality is structural.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import GameError, LimitExceeded

MAX_PLAYERS = 32
MAX_ENUM_PLAYERS = 13


def mask_of(players: Iterable[int]) -> int:
    mask = 0
    for i in players:
        if i < 1 or i > MAX_PLAYERS:
            raise GameError(f"player index {i} out of range 1..{MAX_PLAYERS}")
        mask |= 1 << (i - 1)
    return mask


def members(mask: int) -> list[int]:
    """Players of ``mask`` in ascending order."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def size(mask: int) -> int:
    return bin(mask).count("1")


def lowest(mask: int) -> int:
    """Smallest player index in a non-empty mask."""
    return (mask & -mask).bit_length()


def full_mask(n: int) -> int:
    return (1 << n) - 1


def bit(i: int) -> int:
    return 1 << (i - 1)


def format_coalition(mask: int) -> str:
    return "{" + ",".join(str(i) for i in members(mask)) + "}"


def coalition_key(mask: int) -> str:
    """Key used in game files, e.g. ``"1,3,4"``."""
    return ",".join(str(i) for i in members(mask))


def parse_coalition_key(key: str, n: int | None = None) -> int:
    parts = [p.strip() for p in key.split(",")]
    if not parts or any(not p for p in parts):
        raise GameError(f"bad coalition key {key!r}")
    try:
        idx = [int(p) for p in parts]
    except ValueError:
        raise GameError(f"bad coalition key {key!r}") from None
    if idx != sorted(set(idx)):
        raise GameError(f"coalition key {key!r} must list distinct players in ascending order")
    if n is not None and (idx[0] < 1 or idx[-1] > n):
        raise GameError(f"coalition key {key!r} names a player outside 1..{n}")
    return mask_of(idx)


def subsets_containing(n: int, i: int) -> Iterator[int]:
    """All coalitions of an n-player game that contain player i, ascending."""
    b = bit(i)
    for mask in range(1, 1 << n):
        if mask & b:
            yield mask


@dataclass(frozen=True)
class Partition:
    blocks: tuple[int, ...]
    n: int

    def __post_init__(self):
        seen = 0
        for b in self.blocks:
            if b == 0:
                raise GameError("partition blocks must be non-empty")
            if b & seen:
                raise GameError("partition blocks overlap")
            seen |= b
        if seen != full_mask(self.n):
            missing = members(full_mask(self.n) & ~seen)
            extra = members(seen & ~full_mask(self.n))
            if extra:
                raise GameError(f"player {extra[0]} is outside 1..{self.n}")
            raise GameError(f"player {missing[0]} missing")
        canon = tuple(sorted(self.blocks, key=lowest))
        if canon != self.blocks:
            object.__setattr__(self, "blocks", canon)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int) -> "Partition":
        return cls(tuple(mask_of(b) for b in blocks), n)

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(tuple(bit(i) for i in range(1, n + 1)), n)

    @classmethod
    def grand(cls, n: int) -> "Partition":
        return cls((full_mask(n),), n)

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Partition":
        groups: dict[int, int] = {}
        for i, lab in enumerate(labels, start=1):
            groups[lab] = groups.get(lab, 0) | bit(i)
        return cls(tuple(groups.values()), len(labels))

    @classmethod
    def parse(cls, text: str, n: int) -> "Partition":
        """Parse a literal such as ``"{1,4|2|3}"``."""
        s = text.strip()
        if not (s.startswith("{") and s.endswith("}")):
            raise GameError(f"partition literal {text!r} must be wrapped in braces")
        body = s[1:-1]
        blocks = []
        for chunk in body.split("|"):
            try:
                idx = [int(p) for p in chunk.split(",")]
            except ValueError:
                raise GameError(f"bad block {chunk!r} in partition literal") from None
            if len(set(idx)) != len(idx):
                raise GameError(f"duplicate player in block {chunk!r}")
            blocks.append(idx)
        for blk in blocks:
            for i in blk:
                if i < 1 or i > n:
                    raise GameError(f"player {i} is outside 1..{n}")
        return cls.from_blocks(blocks, n)

    def block_of(self, i: int) -> int:
        b = bit(i)
        for blk in self.blocks:
            if blk & b:
                return blk
        raise GameError(f"player {i} not in partition")

    def as_lists(self) -> list[list[int]]:
        return [members(b) for b in self.blocks]

    def __str__(self):
        return "{" + "|".join(coalition_key(b) for b in self.blocks) + "}"

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)


def _check_enum_limit(n: int) -> None:
    if n < 1:
        raise GameError("need at least one player")
    if n > MAX_ENUM_PLAYERS:
        raise LimitExceeded(f"exhaustive enumeration is capped at {MAX_ENUM_PLAYERS} players (got {n})")


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """Every partition of {1..n}, once each, in restricted-growth-string order.

    Player k joins existing block 0, 1, ... in turn and finally opens a new
    block, which is exactly lexicographic order of the growth strings. Blocks
    come out already ordered by smallest member.
    """
    _check_enum_limit(n)
    blocks: list[int] = []

    def rec(k: int) -> Iterator[Partition]:
        if k > n:
            yield Partition(tuple(blocks), n)
            return
        b = 1 << (k - 1)
        for j in range(len(blocks)):
            blocks[j] |= b
            yield from rec(k + 1)
            blocks[j] &= ~b
        blocks.append(b)
        yield from rec(k + 1)
        blocks.pop()

    return rec(1)


def bell_number(n: int) -> int:
    """Bell number by the Bell triangle."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]
