"""One-slot capacity set, Pareto frontiers, and the refined power-vector set.

Only power vectors whose capacity vector sits on the Pareto frontier of the
one-slot capacity set can matter to a time-minimal schedule: anything else is
dominated componentwise by a frontier point, slot for slot. Restricting the
search to those vectors shrinks the branching factor without losing optimality.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .channel import ChannelModel, PowerVector
from .errors import SizeLimitError

DEFAULT_ENUMERATION_CAP = 10**6


class CapacityPoint(NamedTuple):
    power: PowerVector
    rate: tuple[float, ...]


@dataclass(frozen=True)
class RefinedPowerSet:
    """Power vectors whose capacity vectors are Pareto-optimal for one slot."""

    entries: tuple[CapacityPoint, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @cached_property
    def rate_matrix(self) -> np.ndarray:
        m = np.array([e.rate for e in self.entries], dtype=float)
        m.setflags(write=False)
        return m

    @property
    def powers(self) -> tuple[PowerVector, ...]:
        return tuple(e.power for e in self.entries)


def enumerate_power_vectors(channel: ChannelModel, cap: int = DEFAULT_ENUMERATION_CAP) -> list[PowerVector]:
    """All joint power choices, in lexicographic order over the sorted level sets."""
    total = math.prod(len(s) for s in channel.power_sets)
    if total > cap:
        raise SizeLimitError(
            f"power-vector set has {total} elements, above the enumeration cap {cap}"
        )
    return list(itertools.product(*channel.power_sets))


def _key(point) -> tuple[float, ...]:
    return tuple(float(x) for x in point)


def weak_pareto_frontier(points: Sequence) -> list:
    """Points not strictly exceeded in every component by another point.

    Input order is preserved and duplicates are retained; comparisons are
    exact (no epsilon), since the capacity values feeding this are
    deterministic functions of the channel.
    """
    if len(points) == 0:
        raise ValueError("weak_pareto_frontier of an empty point set")
    keys = [_key(p) for p in points]
    dim = len(keys[0])
    out = []
    for i, b in enumerate(keys):
        if not any(all(a[j] > b[j] for j in range(dim)) for a in keys):
            out.append(points[i])
    return out


def pareto_frontier(points: Sequence) -> list:
    """Points whose only componentwise-dominating point is themselves.

    Exact duplicates collapse to their first occurrence. The result is always
    a subset of the weak frontier of the same input.
    """
    if len(points) == 0:
        raise ValueError("pareto_frontier of an empty point set")
    keys = [_key(p) for p in points]
    dim = len(keys[0])
    seen: set[tuple[float, ...]] = set()
    reps: list[int] = []
    for i, k in enumerate(keys):
        if k not in seen:
            seen.add(k)
            reps.append(i)
    out = []
    for i in reps:
        b = keys[i]
        dominated = any(
            a != b and all(a[j] >= b[j] for j in range(dim)) for a in (keys[r] for r in reps)
        )
        if not dominated:
            out.append(points[i])
    return out


def capacity_set(channel: ChannelModel, cap: int = DEFAULT_ENUMERATION_CAP) -> list[CapacityPoint]:
    """Every power vector paired with its one-slot capacity vector."""
    return [
        CapacityPoint(power=s, rate=_key(channel.capacity_vector(s)))
        for s in enumerate_power_vectors(channel, cap)
    ]


def refined_power_set(channel: ChannelModel, cap: int = DEFAULT_ENUMERATION_CAP) -> RefinedPowerSet:
    """The power vectors backing the Pareto frontier of the one-slot capacity set.

    When several power vectors produce the same frontier capacity vector, the
    one with the smallest total transmit power is kept (lexicographic order
    breaks remaining ties, for determinism).
    """
    points = capacity_set(channel, cap)
    frontier = pareto_frontier([p.rate for p in points])
    entries = []
    for rate in frontier:
        rate = _key(rate)
        candidates = [p.power for p in points if p.rate == rate]
        witness = min(candidates, key=lambda pw: (sum(pw), pw))
        entries.append(CapacityPoint(power=witness, rate=rate))
    return RefinedPowerSet(entries=tuple(entries))


def one_slot_membership(channel: ChannelModel, mu, cap: int = DEFAULT_ENUMERATION_CAP) -> bool:
    """Whether rate vector mu is achievable in a single slot."""
    target = _key(np.asarray(mu, dtype=float))
    if any(x < 0 for x in target):
        raise ValueError("rate vector must be componentwise nonnegative")
    refined = refined_power_set(channel, cap)
    dim = len(target)
    return any(
        all(entry.rate[j] >= target[j] for j in range(dim)) for entry in refined.entries
    )
