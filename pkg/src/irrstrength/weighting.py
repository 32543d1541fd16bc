"""Edge weightings, weighted-degree sums, and strength bounds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .graph import Graph
from .ratpow import as_fraction, pow_at_least


class WeightFormatError(ValueError):
    """Malformed weights file or weights inconsistent with the graph."""


class EdgeWeighting:
    """Positive integer weights aligned with g.edges."""

    __slots__ = ("graph", "weights")

    def __init__(self, graph: Graph, weights):
        w = np.asarray(weights, dtype=np.int64)
        if w.shape != (graph.m,):
            raise WeightFormatError(
                f"expected {graph.m} weights, got shape {w.shape}"
            )
        if w.size and w.min() < 1:
            raise WeightFormatError("weights must be positive integers")
        self.graph = graph
        self.weights = w
        self.weights.setflags(write=False)

    @property
    def k(self) -> int:
        """Largest weight used; 0 for an edgeless graph."""
        return int(self.weights.max()) if self.weights.size else 0

    @classmethod
    def from_mapping(cls, graph: Graph, mapping) -> "EdgeWeighting":
        if len(mapping) != graph.m:
            raise WeightFormatError(
                f"mapping covers {len(mapping)} edges, graph has {graph.m}"
            )
        w = np.empty(graph.m, dtype=np.int64)
        for (u, v), wt in mapping.items():
            w[graph.edge_ids([u], [v])[0]] = wt
        return cls(graph, w)

    def to_mapping(self) -> dict:
        return {
            (int(u), int(v)): int(wt)
            for (u, v), wt in zip(self.graph.edges, self.weights)
        }


def vertex_weights(graph: Graph, weights) -> np.ndarray:
    """Sum of incident edge weights per vertex, exact int64."""
    if isinstance(weights, EdgeWeighting):
        w = weights.weights
    else:
        w = np.asarray(weights, dtype=np.int64)
        if w.shape != (graph.m,):
            raise WeightFormatError(
                f"expected {graph.m} weights, got shape {w.shape}"
            )
    out = np.zeros(graph.n, dtype=np.int64)
    if graph.m:
        # bincount with float weights is faster but only exact below 2**53;
        # all realistic sums fit, so guard and fall back rather than assume
        max_sum_bound = int(w.max()) * int(graph.degrees.max())
        if 0 <= max_sum_bound < 2**53:
            out += np.bincount(
                graph.edges[:, 0], weights=w, minlength=graph.n
            ).astype(np.int64)
            out += np.bincount(
                graph.edges[:, 1], weights=w, minlength=graph.n
            ).astype(np.int64)
        else:
            np.add.at(out, graph.edges[:, 0], w)
            np.add.at(out, graph.edges[:, 1], w)
    return out


def collision_witness(graph: Graph, weights):
    """Two distinct vertices with equal weighted degree, or None."""
    sums = vertex_weights(graph, weights)
    order = np.argsort(sums, kind="stable")
    eq = np.flatnonzero(sums[order][1:] == sums[order][:-1])
    if eq.size == 0:
        return None
    i = int(eq[0])
    return (int(order[i]), int(order[i + 1]))


def is_irregular(graph: Graph, weights) -> bool:
    """True iff all weighted degrees are pairwise distinct."""
    sums = vertex_weights(graph, weights)
    return len(np.unique(sums)) == graph.n


def finite_strength(graph: Graph) -> bool:
    """False iff some component is a single edge, or >= 2 vertices are isolated.

    Those are exactly the graphs no weighting can make irregular.
    """
    degs = graph.degrees if graph.n else np.zeros(0, dtype=np.int64)
    if int((degs == 0).sum()) >= 2:
        return False
    if graph.m:
        u = graph.edges[:, 0]
        v = graph.edges[:, 1]
        if bool(((degs[u] == 1) & (degs[v] == 1)).any()):
            return False
    return True


@dataclass(frozen=True)
class BoundSet:
    """Lower and upper estimates for the irregularity strength of a
    d-regular graph on n vertices."""

    n: int
    d: int
    safe_lower: int
    paper_lower: int
    kkp: int
    beta: float | None = None
    thm_dense: float | None = None
    thm_dense_applicable: bool | None = None
    thm_general: float | None = None


def bounds(n: int, d: int, eps=None, gamma=None) -> BoundSet:
    """Bound package for d-regular graphs on n vertices.

    safe_lower is the classical counting bound ceil((n+d-1)/d); paper_lower
    tightens it by one in the boundary cases but is not achieved by every
    graph (the 4-cycle has strength 3, one below it), so callers wanting a
    guaranteed floor should use safe_lower.  With eps and gamma supplied the
    asymptotic upper estimates n/d + 28 (dense case, valid only when
    d**(1+beta) >= n with beta = eps - 2*gamma) and
    (n/d)(1 + 14/d**beta) + 28 are filled in as floats.
    """
    if n < 1 or d < 1 or d >= n:
        raise ValueError("need 1 <= d < n")
    safe_lower = (n + 2 * d - 2) // d
    paper_lower = (n + 2 * d) // d
    kkp = 6 * (-(-n // d))
    if eps is None or gamma is None:
        return BoundSet(n, d, safe_lower, paper_lower, kkp)
    eps_f = as_fraction(eps)
    gamma_f = as_fraction(gamma)
    if not Fraction(0) < eps_f < Fraction(1, 4):
        raise ValueError("eps must lie in (0, 1/4)")
    if not Fraction(0) < 2 * gamma_f < eps_f:
        raise ValueError("need 0 < 2*gamma < eps")
    beta = eps_f - 2 * gamma_f
    applicable = pow_at_least(d, 1 + beta, n)
    thm_dense = n / d + 28.0
    thm_general = (n / d) * (1.0 + 14.0 / float(d) ** float(beta)) + 28.0
    return BoundSet(
        n,
        d,
        safe_lower,
        paper_lower,
        kkp,
        beta=float(beta),
        thm_dense=thm_dense,
        thm_dense_applicable=applicable,
        thm_general=thm_general,
    )


def load_weights(path, graph: Graph) -> EdgeWeighting:
    """Parse a "u v w" per-line weights file against a known graph.

    '#' starts a comment.  Every edge of the graph must appear exactly once.
    """
    text = Path(path).read_text(encoding="utf-8")
    w = np.zeros(graph.m, dtype=np.int64)
    seen = np.zeros(graph.m, dtype=bool)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) != 3:
            raise WeightFormatError(f"line {lineno}: expected 'u v w'")
        try:
            u, v, wt = int(toks[0]), int(toks[1]), int(toks[2])
        except ValueError:
            raise WeightFormatError(f"line {lineno}: non-integer field") from None
        if wt < 1:
            raise WeightFormatError(f"line {lineno}: weight must be positive")
        try:
            idx = int(graph.edge_ids([u], [v])[0])
        except Exception:
            raise WeightFormatError(
                f"line {lineno}: ({u}, {v}) is not an edge of the graph"
            ) from None
        if seen[idx]:
            raise WeightFormatError(f"line {lineno}: duplicate edge ({u}, {v})")
        seen[idx] = True
        w[idx] = wt
    if not seen.all():
        i = int(np.flatnonzero(~seen)[0])
        u, v = graph.edges[i]
        raise WeightFormatError(f"edge ({int(u)}, {int(v)}) has no weight")
    return EdgeWeighting(graph, w)


def save_weights(weighting: EdgeWeighting, path) -> None:
    """Write one "u v w" line per edge, edges sorted as in the graph."""
    g = weighting.graph
    lines = [
        f"{int(u)} {int(v)} {int(wt)}"
        for (u, v), wt in zip(g.edges, weighting.weights)
    ]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
