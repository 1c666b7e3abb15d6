"""Problem-instance types and subset/partition combinatorics.

Everything downstream (placement, codec, channel simulation, analytics)
works in terms of the types defined here.  All values are immutable and
all enumerations are deterministic: subsets and partitions are produced
in lexicographic order so that partition indices, scheme dumps and test
fixtures are reproducible byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator

MAX_NODES = 64  # desk-scale guard; binomials stay exact far below this


class ParameterError(ValueError):
    """An argument is outside its documented domain."""


class ConstraintViolation(ValueError):
    """A shuffle-configuration inequality failed; `constraint` names it."""

    def __init__(self, constraint: str, detail: str):
        super().__init__(f"{constraint}: {detail}")
        self.constraint = constraint


class InfeasibleInstance(ValueError):
    """Instance parameters do not admit the symmetric construction."""


class InternalInvariantError(RuntimeError):
    """A scheme-construction invariant broke; indicates a bug, not bad input."""


@dataclass(frozen=True, order=True)
class NodeSet:
    """An ordered set of node indices in [1..K].

    Stored as a strictly increasing tuple, which doubles as the
    lexicographic sort key used everywhere ordering matters.
    """

    members: tuple[int, ...]

    def __post_init__(self):
        m = self.members
        if any(not isinstance(x, int) or x < 1 for x in m):
            raise ParameterError(f"node indices must be positive integers: {m}")
        if any(m[i] >= m[i + 1] for i in range(len(m) - 1)):
            raise ParameterError(f"members must be strictly increasing: {m}")

    @classmethod
    def of(cls, *nodes: int) -> "NodeSet":
        return cls(tuple(sorted(set(nodes))))

    @classmethod
    def from_iterable(cls, nodes: Iterable[int]) -> "NodeSet":
        return cls(tuple(sorted(set(nodes))))

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, node: int) -> bool:
        return node in self.members

    def __or__(self, other: "NodeSet") -> "NodeSet":
        return NodeSet.from_iterable(self.members + other.members)

    def __and__(self, other: "NodeSet") -> "NodeSet":
        o = set(other.members)
        return NodeSet(tuple(x for x in self.members if x in o))

    def __sub__(self, other: "NodeSet") -> "NodeSet":
        o = set(other.members)
        return NodeSet(tuple(x for x in self.members if x not in o))

    def issubset(self, other: "NodeSet") -> bool:
        return set(self.members) <= set(other.members)

    def isdisjoint(self, other: "NodeSet") -> bool:
        return set(self.members).isdisjoint(other.members)


def full_set(K: int) -> NodeSet:
    return NodeSet(tuple(range(1, K + 1)))


@dataclass(frozen=True)
class SystemParams:
    """The (K, N, Q, r, B) problem instance.

    K nodes, N input files, Q output functions, computation load r
    (every file is mapped at r nodes), and B bits per intermediate value.
    eta1 = N / C(K, r) files per storage group and eta2 = Q / K outputs
    per node; both must be positive integers for the symmetric scheme.
    """

    K: int
    N: int
    Q: int
    r: int
    B: int

    def __post_init__(self):
        if self.K < 1:
            raise ParameterError(f"K must be >= 1, got {self.K}")
        if self.K > MAX_NODES:
            raise ParameterError(f"K={self.K} exceeds supported maximum {MAX_NODES}")
        if not 1 <= self.r <= self.K:
            raise ParameterError(f"r must lie in [1, K={self.K}], got {self.r}")
        if self.N < 1 or self.Q < 1 or self.B < 1:
            raise ParameterError("N, Q and B must all be >= 1")

    @property
    def eta1(self) -> Fraction:
        return Fraction(self.N, math.comb(self.K, self.r))

    @property
    def eta2(self) -> Fraction:
        return Fraction(self.Q, self.K)

    def require_symmetric(self) -> tuple[int, int]:
        """Return (eta1, eta2) as ints, or raise if the instance is asymmetric."""
        e1, e2 = self.eta1, self.eta2
        if e1.denominator != 1 or e1 == 0:
            raise InfeasibleInstance(
                f"N={self.N} is not a positive multiple of C({self.K},{self.r})"
            )
        if e2.denominator != 1 or e2 == 0:
            raise InfeasibleInstance(f"Q={self.Q} is not a positive multiple of K={self.K}")
        return int(e1), int(e2)


@dataclass(frozen=True)
class Partition:
    """One transmitter/receiver split of the K half-duplex nodes."""

    index: int
    tx: NodeSet
    rx: NodeSet

    def __post_init__(self):
        if not self.tx.isdisjoint(self.rx):
            raise ParameterError("tx and rx must be disjoint")


@dataclass(frozen=True)
class ShuffleConfig:
    """A validated (K_r, t) shuffle configuration for a problem instance.

    s = r + 1 - t receivers share each coded message; t transmitters
    cooperate on it.  Construct through :func:`validate_config`.
    """

    params: SystemParams
    K_r: int
    t: int

    @property
    def s(self) -> int:
        return self.params.r + 1 - self.t

    @property
    def K_t(self) -> int:
        return self.params.K - self.K_r


def enum_subsets(ground: NodeSet, k: int) -> list[NodeSet]:
    """All size-k subsets of `ground` in lexicographic order."""
    if not 0 <= k <= len(ground):
        raise ParameterError(f"subset size {k} out of range [0, {len(ground)}]")
    return [NodeSet(c) for c in combinations(ground.members, k)]


def enum_partitions(K: int, K_t: int) -> list[Partition]:
    """All C(K, K_t) transmitter/receiver partitions, indexed 1..C(K,K_t).

    Partition p has the p-th lexicographic size-K_t transmitter set; the
    receivers are its complement.
    """
    if K > MAX_NODES:
        raise ParameterError(f"K={K} exceeds supported maximum {MAX_NODES}")
    if not 1 <= K_t <= K - 1:
        raise ParameterError(f"K_t must lie in [1, K-1], got K_t={K_t}, K={K}")
    everyone = full_set(K)
    return [
        Partition(index=p, tx=tx, rx=everyone - tx)
        for p, tx in enumerate(enum_subsets(everyone, K_t), start=1)
    ]


def validate_config(params: SystemParams, K_r: int, t: int) -> ShuffleConfig:
    """Check every shuffle-configuration inequality and return the config.

    Raises ConstraintViolation naming the first inequality that fails.
    s is derived as r + 1 - t.  The constraint K_t <= K - s is implied by
    s <= K_r but is checked explicitly anyway.
    """
    K, r = params.K, params.r
    s = r + 1 - t
    K_t = K - K_r
    if not 1 <= K_r <= K:
        raise ConstraintViolation("1 <= K_r <= K", f"K_r={K_r}, K={K}")
    if t < 1:
        raise ConstraintViolation("t >= 1", f"t={t}")
    if s < 1:
        raise ConstraintViolation("s = r+1-t >= 1", f"r={r}, t={t} gives s={s}")
    if s > K_r:
        raise ConstraintViolation("s <= K_r", f"s={s}, K_r={K_r}")
    if t > K_t:
        raise ConstraintViolation("t <= K - K_r", f"t={t}, K-K_r={K_t}")
    if K_t > K - s:
        raise ConstraintViolation("K - K_r <= K - s", f"K_t={K_t}, K-s={K - s}")
    return ShuffleConfig(params=params, K_r=K_r, t=t)
