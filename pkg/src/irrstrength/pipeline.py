"""End-to-end guarded construction plus a randomized fallback solver.

The pipeline never returns an invalid weighting: every stage either
succeeds with its invariants intact or raises a typed StageFailure, which
run_pipeline converts into a structured result naming the stage.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .construct import (
    build_s_order,
    step1_initial,
    step2_level_bulk,
    step3_distinguish,
)
from .errors import PrecheckError, StageFailure, VerifyError
from .graph import Graph
from .partition import (
    ConstructionParams,
    derive_params,
    partition_counts,
    resample_until_valid,
)
from .weighting import (
    EdgeWeighting,
    collision_witness,
    finite_strength,
    vertex_weights,
)


@dataclass
class PipelineResult:
    """Outcome of one construction attempt."""

    weighting: EdgeWeighting | None
    params: ConstructionParams | None
    resamples: int | None
    stage_failure: str | None
    stage_detail: str | None
    timings: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.weighting is not None


def run_pipeline(
    graph: Graph, eps=0.1, gamma=0.04, seed: int = 0, budget: int = 1000
) -> PipelineResult:
    """Run precheck, parameter derivation, partition sampling and the three
    construction steps, then verify the result.

    On success the returned weighting is a verified irregular assignment.
    On any typed stage failure the weighting is None and stage_failure
    carries the stage name; nothing partially built is ever returned.
    """
    timings: dict = {}
    diag: dict = {}
    params = None
    resamples = None

    def fail(exc: StageFailure) -> PipelineResult:
        return PipelineResult(
            weighting=None,
            params=params,
            resamples=resamples,
            stage_failure=exc.stage,
            stage_detail=exc.detail,
            timings=timings,
            diagnostics=diag,
        )

    try:
        t = time.perf_counter()
        d = graph.is_regular()
        if graph.n == 0 or d is None:
            raise PrecheckError("graph is not regular")
        if d < 1:
            raise PrecheckError("degree 0 is outside the construction domain")
        if not finite_strength(graph):
            raise PrecheckError("no irregular weighting exists for this graph")
        timings["precheck"] = time.perf_counter() - t

        t = time.perf_counter()
        params = derive_params(graph.n, d, eps, gamma)
        timings["params"] = time.perf_counter() - t

        t = time.perf_counter()
        part, resamples = resample_until_valid(graph, params, seed, budget)
        timings["partition"] = time.perf_counter() - t
        diag.update(partition_counts(part))

        t = time.perf_counter()
        f1 = step1_initial(part)
        f2 = step2_level_bulk(part, f1)
        timings["step2"] = time.perf_counter() - t

        t = time.perf_counter()
        sorder = build_s_order(part)
        timings["s_order"] = time.perf_counter() - t

        t = time.perf_counter()
        step3 = step3_distinguish(part, f1 + f2, sorder)
        timings["step3"] = time.perf_counter() - t

        t = time.perf_counter()
        total = f1 + f2 + step3.f3
        weighting = EdgeWeighting(graph, total)
        nb = int(part.is_b.sum())
        seg_lo = params.step2_offset + 1
        seg_hi = params.step2_offset + nb
        diag["b_segment"] = [seg_lo, seg_hi]
        diag["buffer"] = 0.4 * params.omega * d
        sums = vertex_weights(graph, total)
        s_sums = sums[~part.is_b]
        diag["s_sums_in_b_segment"] = int(
            ((s_sums >= seg_lo) & (s_sums <= seg_hi)).sum()
        )
        witness = collision_witness(graph, total)
        if witness is not None:
            raise VerifyError(
                f"vertices {witness[0]} and {witness[1]} share weighted "
                f"degree {int(sums[witness[0]])}"
            )
        timings["verify"] = time.perf_counter() - t
    except StageFailure as exc:
        return fail(exc)

    return PipelineResult(
        weighting=weighting,
        params=params,
        resamples=resamples,
        stage_failure=None,
        stage_detail=None,
        timings=timings,
        diagnostics=diag,
    )


@dataclass(frozen=True)
class GreedyConfig:
    """Knobs for the randomized local-search fallback."""

    restarts: int = 20
    stagnation_factor: int = 50
    accept_equal_prob: float = 0.1
    max_k: int | None = None


def _greedy_attempt(graph: Graph, k: int, rng, cfg: GreedyConfig):
    """One local-search run at a fixed ceiling k; None on stagnation."""
    m = graph.m
    weights = np.full(m, (k + 1) // 2, dtype=np.int64)
    sums = vertex_weights(graph, weights)
    counts: dict = {}
    for s in sums.tolist():
        counts[s] = counts.get(s, 0) + 1
    dups = {s for s, c in counts.items() if c > 1}

    def move_vertex(z, delta):
        old = int(sums[z])
        counts[old] -= 1
        if counts[old] == 1:
            dups.discard(old)
        elif counts[old] == 0:
            del counts[old]
        new = old + delta
        c = counts.get(new, 0) + 1
        counts[new] = c
        if c > 1:
            dups.add(new)
        sums[z] = new

    collisions = graph.n - len(counts)
    best = collisions
    stagnation = cfg.stagnation_factor * max(m, 1)
    since_improve = 0
    while since_improve < stagnation:
        if collisions == 0:
            return weights
        pool = sorted(dups)
        val = pool[int(rng.integers(len(pool)))]
        verts = np.flatnonzero(sums == val)
        z = int(verts[int(rng.integers(verts.size))])
        eids = graph.incident_edges(z)
        eid = int(eids[int(rng.integers(eids.size))])
        old_w = int(weights[eid])
        new_w = int(rng.integers(1, k + 1))
        a, b = int(graph.edges[eid, 0]), int(graph.edges[eid, 1])
        delta = new_w - old_w
        move_vertex(a, delta)
        move_vertex(b, delta)
        new_coll = graph.n - len(counts)
        accept = new_coll < collisions or (
            new_coll == collisions and rng.random() < cfg.accept_equal_prob
        )
        if accept:
            weights[eid] = new_w
            collisions = new_coll
        else:
            move_vertex(a, -delta)
            move_vertex(b, -delta)
        if collisions < best:
            best = collisions
            since_improve = 0
        else:
            since_improve += 1
    if collisions == 0:
        return weights
    return None


def fallback_greedy(
    graph: Graph,
    seed: int = 0,
    k_start: int | None = None,
    config: GreedyConfig = GreedyConfig(),
) -> EdgeWeighting:
    """Randomized local search over growing weight ceilings.

    Starts at the counting lower bound for regular graphs (so a success is
    never below the optimum there), restarts a bounded number of times per
    ceiling, then raises the ceiling by one.  Works on irregular-degree
    graphs too.  Raises ValueError when no irregular weighting can exist at
    all, RuntimeError if config.max_k is set and exceeded.
    """
    if not finite_strength(graph):
        raise ValueError("graph admits no irregular weighting")
    if graph.m == 0:
        return EdgeWeighting(graph, np.empty(0, dtype=np.int64))
    d = graph.is_regular()
    lower = (graph.n + 2 * d - 2) // d if d else 1
    k = max(k_start or 1, lower, 1)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    while True:
        for _ in range(config.restarts):
            w = _greedy_attempt(graph, k, rng, config)
            if w is not None:
                return EdgeWeighting(graph, w)
        if config.max_k is not None and k >= config.max_k:
            raise RuntimeError(f"local search gave up at ceiling k={k}")
        k += 1
