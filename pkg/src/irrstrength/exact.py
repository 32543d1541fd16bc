"""Exhaustive computation of the irregularity strength of small graphs.

Depth-first search over edge weights in {1..k}, edges in lexicographic
order.  Two prunes keep it usable: a vertex whose last incident edge just
got weighted must not repeat an already-final sum, and a vertex whose
remaining reachable sum interval is narrow and fully occupied by final
sums can never escape a collision.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SearchBudgetError
from .graph import Graph
from .weighting import EdgeWeighting, finite_strength

_INTERVAL_PRUNE_WIDTH = 64


@dataclass(frozen=True)
class ExactResult:
    """Certified strength: s is None when no irregular weighting exists."""

    s: int | None
    weighting: EdgeWeighting | None
    nodes: int
    certified: bool


class _Budget:
    __slots__ = ("left",)

    def __init__(self, n: int):
        self.left = n

    def spend(self):
        self.left -= 1
        if self.left < 0:
            raise SearchBudgetError("exhaustive search node budget exceeded")


def _completion_order(graph: Graph) -> list:
    """Static edge order that finishes vertices as early as possible.

    Finished vertices feed the collision prune, so the search wants them
    early; greedily prefer the edge whose endpoints are closest to done,
    ties broken lexicographically for determinism.
    """
    rem = graph.degrees.tolist()
    todo = {i: (int(u), int(v)) for i, (u, v) in enumerate(graph.edges)}
    order = []
    while todo:
        best = min(
            todo.items(),
            key=lambda kv: (
                min(rem[kv[1][0]], rem[kv[1][1]]),
                rem[kv[1][0]] + rem[kv[1][1]],
                kv[0],
            ),
        )[0]
        u, v = todo.pop(best)
        rem[u] -= 1
        rem[v] -= 1
        order.append(best)
    return order


def _search_k(graph: Graph, k: int, budget: _Budget):
    """First irregular weighting with weights <= k along a fixed edge
    order, or None if none exists."""
    m = graph.m
    n = graph.n
    eorder = _completion_order(graph)
    edges = graph.edges[eorder] if m else graph.edges
    deg_rem = graph.degrees.copy() if n else np.zeros(0, dtype=np.int64)
    sums = [0] * n
    rem = deg_rem.tolist()
    completed = set()
    # vertices with no edges are final immediately; at most one may exist
    for z in range(n):
        if rem[z] == 0:
            if 0 in completed:
                return None
            completed.add(0)
    weights = [0] * m

    def viable(z) -> bool:
        if rem[z] == 0:
            if sums[z] in completed:
                return False
            completed.add(z_final := sums[z])
            trail.append(z_final)
            return True
        width = rem[z] * (k - 1) + 1
        if width < _INTERVAL_PRUNE_WIDTH:
            lo = sums[z] + rem[z]
            if all((lo + t) in completed for t in range(width)):
                return False
        return True

    trail: list = []

    def rec(i: int) -> bool:
        if i == m:
            return True
        a = int(edges[i, 0])
        b = int(edges[i, 1])
        rem[a] -= 1
        rem[b] -= 1
        for wt in range(1, k + 1):
            budget.spend()
            sums[a] += wt
            sums[b] += wt
            weights[i] = wt
            mark = len(trail)
            if viable(a) and viable(b):
                if rec(i + 1):
                    return True
            while len(trail) > mark:
                completed.discard(trail.pop())
            sums[a] -= wt
            sums[b] -= wt
        rem[a] += 1
        rem[b] += 1
        return False

    if rec(0):
        out = np.zeros(m, dtype=np.int64)
        out[eorder] = weights
        return out
    return None


def exact_strength(graph: Graph, node_budget: int = 10**8) -> ExactResult:
    """Smallest k admitting an irregular weighting, with a witness.

    Starts at the counting lower bound for regular graphs and walks k
    upward; if the very first k succeeds, the value below it is searched
    exhaustively too, so the returned s is always certified optimal.
    Raises SearchBudgetError when node_budget runs out first.
    """
    budget = _Budget(node_budget)
    if not finite_strength(graph):
        return ExactResult(
            s=None, weighting=None, nodes=node_budget - budget.left,
            certified=True,
        )
    if graph.m == 0:
        # n <= 1 here; the empty weighting is vacuously irregular
        return ExactResult(
            s=1,
            weighting=EdgeWeighting(graph, np.empty(0, dtype=np.int64)),
            nodes=0,
            certified=True,
        )
    d = graph.is_regular()
    k0 = (graph.n + 2 * d - 2) // d if d else 1
    k0 = max(k0, 1)
    k = k0
    while True:
        w = _search_k(graph, k, budget)
        if w is not None:
            break
        k += 1
    certified = True
    if k == k0:
        # first try landed; certify by exhausting smaller ceilings
        down = k0 - 1
        while down >= 1:
            w2 = _search_k(graph, down, budget)
            if w2 is None:
                break
            w, k = w2, down
            down -= 1
    return ExactResult(
        s=k,
        weighting=EdgeWeighting(graph, w),
        nodes=node_budget - budget.left,
        certified=certified,
    )


def certify_optimal(graph: Graph, k: int, node_budget: int = 10**8) -> bool:
    """True iff no irregular weighting with weights <= k-1 exists."""
    if k <= 1:
        return True
    budget = _Budget(node_budget)
    return _search_k(graph, k - 1, budget) is None
