"""Minimum-slot draining of per-pair backlogs via A* over virtual-queue states.

The question "is average rate mu reachable in T slots" is equivalent to "can
the backlog tau*T*mu be drained to zero in at most T slots", so the solver
works on the latter: states are clamped residual queues, actions are the
refined power vectors, every slot costs 1, and the heuristic divides each
backlog by the best interference-free rate of its pair, which never
overestimates the true remaining slot count.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass

import numpy as np

from .channel import ChannelModel, PowerVector
from .errors import InfeasibleError, SizeLimitError
from .region import RefinedPowerSet, refined_power_set

GOAL_EPS_FACTOR = 1e-9
# slack subtracted before ceil() so a half-ulp overshoot of an exactly-integer
# slot bound cannot round the heuristic up past the true residual cost
_CEIL_GUARD = 1e-9


@dataclass(frozen=True)
class SolverOptions:
    """Knobs for one solve run; the defaults reproduce the full algorithm."""

    depth_cap: int | None = None  # certify "needs more than this many slots" and stop
    horizon: int | None = None  # scheduling horizon, feeds the runaway guard
    goal_eps_factor: float = GOAL_EPS_FACTOR
    use_pruning: bool = True  # drop frontier nodes dominated by an expanded node
    use_heuristic: bool = True  # False degrades to uniform-cost search
    integer_heuristic: bool = True  # ceil the slot bound (true residuals are integers)
    hard_cap: int | None = None  # overrides the automatic runaway depth guard
    trace_expanded: bool = False  # record the queue of every expanded node


@dataclass
class SearchStats:
    expanded_nodes: int = 0
    generated_nodes: int = 0
    pruned_nodes: int = 0
    ebf: float = 0.0
    wall_time: float = 0.0


@dataclass
class Solution:
    """Outcome of a solve run.

    ``p_star`` is the minimum number of slots that drains the queue; it is
    None when a depth cap stopped the search first, in which case
    ``min_f_bound`` certifies that every completion needs strictly more than
    the cap (it is the smallest evaluation value left on the frontier).
    """

    p_star: int | None
    actions: list[PowerVector]
    queue_trajectory: list[np.ndarray]
    stats: SearchStats
    min_f_bound: float | None = None
    expanded_queues: list[np.ndarray] | None = None


class SearchNode:
    """One search node: a residual queue plus the action multiset that led to it."""

    __slots__ = ("counts", "cum", "queue", "g", "h", "f", "parent", "action", "alive")

    def __init__(self, counts, cum, queue, g, h, parent=None, action=None):
        self.counts = counts
        self.cum = cum  # slot-duration-scaled cumulative capacity, canonical order
        self.queue = queue
        self.g = g
        self.h = h
        self.f = g + h
        self.parent = parent
        self.action = action
        self.alive = True


def queue_update(q, c, tau: float) -> np.ndarray:
    """One slot of queue dynamics: drain tau*c from q, clamped at zero."""
    return np.maximum(np.asarray(q, dtype=float) - tau * np.asarray(c, dtype=float), 0.0)


def _peak_rates(channel: ChannelModel) -> list[float]:
    # 0.0 marks a pair that can never transmit; callers decide if that matters
    rates = []
    for n in range(channel.num_pairs):
        if channel.max_power(n) <= 0.0:
            rates.append(0.0)
        else:
            rates.append(channel.interference_free_rate(n))
    return rates


def heuristic(channel: ChannelModel, q) -> float:
    """Optimistic remaining-slot count: largest backlog-to-peak-rate ratio.

    Every pair n can move at most tau * interference_free_rate(n) bits per
    slot, whatever anyone else does, so the maximum of q_n over that quantity
    never exceeds the true number of slots still needed. Zero exactly when the
    queue is drained.
    """
    qv = np.asarray(q, dtype=float)
    tau = channel.slot_duration
    best = 0.0
    for n, rate in enumerate(_peak_rates(channel)):
        if qv[n] <= 0.0:
            continue
        if rate <= 0.0:
            raise InfeasibleError(
                f"pair {n} has backlog but no positive power level; queue can never drain"
            )
        best = max(best, float(qv[n]) / (tau * rate))
    return best


def dominates(a, b) -> bool:
    """Node a reaches a no-larger residual queue in no more slots than b."""
    if a.g > b.g:
        return False
    return all(x >= y for x, y in zip(a.cum, b.cum))


def effective_branching_factor(expanded: int, depth: int) -> float:
    """The branching factor B >= 1 of a uniform tree with ``expanded`` non-root nodes.

    Solves sum_{t=1..depth} B^t = expanded by bisection, to well below 1e-6.
    """
    if depth == 0:
        raise ValueError("effective branching factor is undefined at depth 0")
    if depth < 0 or expanded < depth:
        raise ValueError(f"need expanded >= depth >= 1, got expanded={expanded}, depth={depth}")
    return _ebf_root(expanded, depth, lo=1.0)


def _geom_sum(b: float, p: int) -> float:
    total = 0.0
    term = 1.0
    for _ in range(p):
        term *= b
        total += term
    return total


def _ebf_root(expanded: float, depth: int, lo: float = 0.0) -> float:
    hi = max(1.0, float(expanded))
    if _geom_sum(lo, depth) >= expanded:
        return lo
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _geom_sum(mid, depth) < expanded:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _stats_ebf(expanded: int, depth: int | None) -> float:
    # duplicate collapsing can legitimately push expanded below depth, in
    # which case the root of the defining equation simply drops below 1
    if not depth:
        return 0.0
    return _ebf_root(expanded, depth)


def _cum_from_counts(counts, taucap, dim: int) -> tuple[float, ...]:
    # fixed accumulation order: identical action multisets produce bitwise
    # identical sums regardless of the path that reached them
    out = [0.0] * dim
    for k, c in enumerate(counts):
        if c:
            row = taucap[k]
            for j in range(dim):
                out[j] += c * row[j]
    return tuple(out)


def _runaway_cap(options: SolverOptions, h0: float, num_pairs: int) -> int:
    if options.hard_cap is not None:
        return options.hard_cap
    if options.horizon is not None:
        slots = options.horizon
    else:
        # no horizon given: fall back to a bound that exceeds the serve-one-
        # pair-at-a-time schedule, which always drains the queue
        slots = max(1, math.ceil(h0))
    return math.ceil(2.0 * h0) + num_pairs * slots


def solve(
    channel: ChannelModel,
    q0,
    options: SolverOptions | None = None,
    *,
    refined: RefinedPowerSet | None = None,
) -> Solution:
    """Minimum number of slots that drains backlog q0, plus a witness schedule.

    Best-first search on (residual queue, action multiset) states. Nodes are
    ordered by path cost plus heuristic; ties prefer deeper nodes, then
    lexicographically smaller cumulative capacity. Visited states are keyed on
    (depth, cumulative capacity), and after each expansion any frontier node
    whose cumulative capacity is dominated at no smaller depth is discarded.
    """
    opts = options or SolverOptions()
    started = time.perf_counter()

    q0 = np.asarray(q0, dtype=float)
    if q0.shape != (channel.num_pairs,):
        raise ValueError(f"queue has shape {q0.shape}, expected ({channel.num_pairs},)")
    if np.any(q0 < 0):
        raise ValueError("queue lengths must be nonnegative")

    eps = opts.goal_eps_factor * max(1.0, float(np.max(q0)))
    peak = _peak_rates(channel)
    for n in range(channel.num_pairs):
        if q0[n] > eps and peak[n] <= 0.0:
            raise InfeasibleError(
                f"pair {n} has backlog but no positive power level; queue can never drain"
            )

    stats = SearchStats()
    if bool(np.all(q0 <= eps)):
        stats.wall_time = time.perf_counter() - started
        return Solution(p_star=0, actions=[], queue_trajectory=[q0.copy()], stats=stats)

    if refined is None:
        refined = refined_power_set(channel)
    actions = refined.entries
    num_actions = len(actions)
    dim = channel.num_pairs
    tau = channel.slot_duration
    taucap = [tuple(tau * r for r in e.rate) for e in actions]
    denom = [tau * r if r > 0.0 else 0.0 for r in peak]

    use_h = opts.use_heuristic
    use_ceil = opts.integer_heuristic

    def h_of(queue) -> float:
        if not use_h:
            return 0.0
        best = 0.0
        for j in range(dim):
            qj = queue[j]
            if qj > 0.0 and denom[j] > 0.0:
                v = qj / denom[j]
                if v > best:
                    best = v
        if use_ceil and best > 0.0:
            return float(math.ceil(best - _CEIL_GUARD))
        return best

    q0_t = tuple(float(x) for x in q0)
    hard_cap = _runaway_cap(opts, heuristic(channel, q0), dim)

    root = SearchNode(
        counts=(0,) * num_actions,
        cum=(0.0,) * dim,
        queue=q0_t,
        g=0,
        h=h_of(q0_t),
    )

    counter = 0
    heap = [(root.f, 0, root.cum, counter, root)]
    open_index: dict[tuple, SearchNode] = {(0, root.cum): root}
    open_by_g: dict[int, dict[tuple, SearchNode]] = {0: {(0, root.cum): root}}
    closed: set[tuple] = set()
    expanded_queues: list[np.ndarray] | None = [] if opts.trace_expanded else None

    goal: SearchNode | None = None
    min_f_bound: float | None = None

    while heap:
        _, _, _, _, node = heapq.heappop(heap)
        if not node.alive:
            continue
        key = (node.g, node.cum)
        node.alive = False
        open_index.pop(key, None)
        bucket = open_by_g.get(node.g)
        if bucket is not None:
            bucket.pop(key, None)
        if key in closed:
            continue

        if all(q <= eps for q in node.queue):
            goal = node
            break
        if opts.depth_cap is not None and node.f > opts.depth_cap:
            min_f_bound = node.f
            break
        if node.f > hard_cap:
            raise SizeLimitError(
                f"search passed the depth guard {hard_cap} without draining the queue"
            )

        closed.add(key)
        if node.parent is not None:
            stats.expanded_nodes += 1
        if expanded_queues is not None:
            expanded_queues.append(np.array(node.queue))

        if opts.use_pruning:
            acum = node.cum
            ag = node.g
            for g_level, level in open_by_g.items():
                if g_level < ag or not level:
                    continue
                doomed = [
                    k
                    for k, other in level.items()
                    if all(x >= y for x, y in zip(acum, other.cum))
                ]
                for k in doomed:
                    victim = level.pop(k)
                    victim.alive = False
                    open_index.pop(k, None)
                    stats.pruned_nodes += 1

        child_g = node.g + 1
        for ai in range(num_actions):
            counts = node.counts
            counts = counts[:ai] + (counts[ai] + 1,) + counts[ai + 1 :]
            cum = _cum_from_counts(counts, taucap, dim)
            stats.generated_nodes += 1
            ckey = (child_g, cum)
            if ckey in closed or ckey in open_index:
                continue
            queue = tuple(
                q0_t[j] - cum[j] if q0_t[j] > cum[j] else 0.0 for j in range(dim)
            )
            child = SearchNode(counts, cum, queue, child_g, h_of(queue), node, ai)
            counter += 1
            heapq.heappush(heap, (child.f, -child_g, cum, counter, child))
            open_index[ckey] = child
            open_by_g.setdefault(child_g, {})[ckey] = child

    stats.wall_time = time.perf_counter() - started

    if goal is None:
        if min_f_bound is None:
            # frontier exhausted without reaching the goal: with every pair
            # able to transmit this cannot happen, so treat it as a guard trip
            raise SizeLimitError("search frontier exhausted before the queue drained")
        stats.ebf = _stats_ebf(stats.expanded_nodes, opts.depth_cap)
        return Solution(
            p_star=None,
            actions=[],
            queue_trajectory=[q0.copy()],
            stats=stats,
            min_f_bound=min_f_bound,
            expanded_queues=expanded_queues,
        )

    taken: list[int] = []
    walk = goal
    while walk.parent is not None:
        taken.append(walk.action)
        walk = walk.parent
    taken.reverse()

    trajectory = [q0.copy()]
    for ai in taken:
        trajectory.append(queue_update(trajectory[-1], actions[ai].rate, tau))
    stats.ebf = _stats_ebf(stats.expanded_nodes, goal.g)
    return Solution(
        p_star=goal.g,
        actions=[actions[ai].power for ai in taken],
        queue_trajectory=trajectory,
        stats=stats,
        expanded_queues=expanded_queues,
    )
