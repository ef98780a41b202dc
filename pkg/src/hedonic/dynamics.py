"""Best-reply dynamics under a random round-robin scheduler.

Every player starts alone under its own label. Each round draws a fresh
permutation of the players; in that order each player switches to its best
label given everyone else's current labels. A round in which nobody moves
ends the run: the profile is a pure Nash equilibrium and the induced
partition is Nash-stable.

Scheduler randomness comes from :class:`XorShift64` so traces are bit-exact
on every platform::

    state is seeded through one SplitMix64 step (a zero state is replaced by
    0x9E3779B97F4A7C15), then each draw does
        x ^= x << 13;  x ^= x >> 7;  x ^= x << 17   (mod 2**64)
    and returns x.

Permutations use Fisher-Yates: for k = n-1 .. 1, swap slot k with slot
``draw() % (k + 1)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, TextIO

from .coalitions import Partition, bit
from .game import EPS, AllocationRule, CharacteristicFunction

MASK64 = (1 << 64) - 1


class XorShift64:
    def __init__(self, seed: int):
        z = (seed + 0x9E3779B97F4A7C15) & MASK64
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        z ^= z >> 31
        self.state = z or 0x9E3779B97F4A7C15

    def next(self) -> int:
        x = self.state
        x ^= (x << 13) & MASK64
        x ^= x >> 7
        x ^= (x << 17) & MASK64
        self.state = x
        return x

    def permutation(self, n: int) -> list[int]:
        """Random order of players 1..n."""
        order = list(range(1, n + 1))
        for k in range(n - 1, 0, -1):
            j = self.next() % (k + 1)
            order[k], order[j] = order[j], order[k]
        return order


@dataclass(frozen=True)
class StrategyProfile:
    """Strategy label of each player; equal labels form a coalition."""

    sigma: tuple[int, ...]

    def __post_init__(self):
        n = len(self.sigma)
        object.__setattr__(self, "sigma", tuple(int(s) for s in self.sigma))
        if n == 0:
            raise ValueError("empty strategy profile")
        for s in self.sigma:
            if not 1 <= s <= n:
                raise ValueError(f"strategy label {s} outside 1..{n}")

    @classmethod
    def initial(cls, n: int) -> "StrategyProfile":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.sigma)

    def holders(self, label: int, exclude: int | None = None) -> int:
        """Mask of players holding ``label``, optionally leaving one out."""
        m = 0
        for j, s in enumerate(self.sigma, start=1):
            if s == label and j != exclude:
                m |= bit(j)
        return m

    def with_label(self, i: int, label: int) -> "StrategyProfile":
        s = list(self.sigma)
        s[i - 1] = label
        return StrategyProfile(tuple(s))


def induced_partition(profile: StrategyProfile) -> Partition:
    return Partition.from_labels(profile.sigma)


def _best_reply(payoff, sigma: Sequence[int], i: int, eps: float) -> tuple[int, float, float]:
    n = len(sigma)
    groups = [0] * (n + 1)
    for j, s in enumerate(sigma, start=1):
        if j != i:
            groups[s] |= bit(j)
    me = bit(i)
    current = sigma[i - 1]
    here = payoff(i, groups[current] | me)
    vals = [payoff(i, groups[c] | me) for c in range(1, n + 1)]
    top = max(vals)
    if top <= here + eps:
        return current, here, here
    for c, val in enumerate(vals, start=1):
        if val > here + eps and top - val <= eps:
            return c, here, val
    raise AssertionError("unreachable")


def best_reply(u: CharacteristicFunction, rule: AllocationRule, profile: StrategyProfile, i: int,
               eps: float = EPS) -> int:
    """Label maximising player i's payoff; stays put unless strictly better by > eps.

    Among near-maximal strictly better labels the smallest wins.
    """
    if not 1 <= i <= profile.n:
        raise ValueError(f"player {i} outside 1..{profile.n}")
    return _best_reply(rule.value, profile.sigma, i, eps)[0]


@dataclass(frozen=True)
class Step:
    step: int
    round: int
    player: int
    old: int
    new: int
    payoff_before: float
    payoff_after: float


@dataclass
class DynamicsTrace:
    seed: int
    rule_kind: str
    n: int
    steps: list[Step] = field(default_factory=list)
    converged: bool = False
    partition: Partition | None = None
    rounds: int = 0
    final: StrategyProfile | None = None

    @property
    def outcome(self) -> str:
        return "converged" if self.converged else "round-limit-reached"

    def partitions(self) -> list[Partition]:
        """Π(0) → ... : the partition after each recorded move."""
        sigma = list(range(1, self.n + 1))
        out = [Partition.from_labels(sigma)]
        for st in self.steps:
            sigma[st.player - 1] = st.new
            out.append(Partition.from_labels(sigma))
        return out

    def dumps(self) -> str:
        lines = [f"# seed={self.seed} rule={self.rule_kind} n={self.n}",
                 "# s,round,player,old,new,payoff_before,payoff_after"]
        for st in self.steps:
            lines.append(f"{st.step},{st.round},{st.player},{st.old},{st.new},"
                         f"{st.payoff_before:.9g},{st.payoff_after:.9g}")
        if self.converged:
            lines.append(f"# outcome=converged rounds={self.rounds} partition={self.partition}")
        else:
            lines.append(f"# outcome=round-limit-reached rounds={self.rounds}")
        return "\n".join(lines) + "\n"

    def write(self, fh: TextIO) -> None:
        fh.write(self.dumps())

    @classmethod
    def loads(cls, text: str) -> "DynamicsTrace":
        lines = text.splitlines()
        head = dict(kv.split("=", 1) for kv in lines[0].lstrip("# ").split())
        tr = cls(int(head["seed"]), head["rule"], int(head["n"]))
        for line in lines[1:]:
            if line.startswith("# outcome="):
                tail = line[2:].split(" ", 2)
                info = dict(kv.split("=", 1) for kv in tail)
                tr.rounds = int(info["rounds"])
                tr.converged = info["outcome"] == "converged"
                if tr.converged:
                    tr.partition = Partition.parse(info["partition"], tr.n)
            elif line and not line.startswith("#"):
                s, l, p, o, nw, b, a = line.split(",")
                tr.steps.append(Step(int(s), int(l), int(p), int(o), int(nw), float(b), float(a)))
        return tr


def run_dynamics(u: CharacteristicFunction, rule: AllocationRule, seed: int, max_rounds: int,
                 eps: float = EPS) -> DynamicsTrace:
    if max_rounds < 1:
        raise ValueError("max_rounds must be at least 1")
    n = u.n
    cache: dict[tuple[int, int], float] = {}

    def payoff(i, mask):
        key = (i, mask)
        val = cache.get(key)
        if val is None:
            val = cache[key] = rule.value(i, mask)
        return val

    rng = XorShift64(seed)
    sigma = list(range(1, n + 1))
    trace = DynamicsTrace(seed, rule.kind, n)
    for ell in range(1, max_rounds + 1):
        order = rng.permutation(n)
        moved = False
        for pos, i in enumerate(order, start=1):
            new, before, after = _best_reply(payoff, sigma, i, eps)
            if new != sigma[i - 1]:
                trace.steps.append(Step((ell - 1) * n + pos, ell, i, sigma[i - 1], new, before, after))
                sigma[i - 1] = new
                moved = True
        trace.rounds = ell
        if not moved:
            trace.converged = True
            break
    trace.final = StrategyProfile(tuple(sigma))
    if trace.converged:
        trace.partition = Partition.from_labels(sigma)
    return trace


def round_of_step(step: int, n: int) -> int:
    return math.ceil(step / n)
