"""Three-step construction of an irregular weighting on a regular graph.

Step 1 lays down initial weights keyed to the partition: window edges
inside the bulk part B get one of two values straddling n/d, edges from B
into designated class S_i get i*omega + ceil(n/d), everything else gets 1.
Step 2 raises every B vertex onto its own rung of a common ladder, so B
sums form a consecutive integer segment.  Step 3 walks the S vertices in a
fixed order and moves each onto its own two-member arithmetic-progression
class mod q, using only unit quanta of size q on edges inside S, which
keeps already-settled vertices locked to their classes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SOrderError, Step2RangeError, Step3InfeasibleError
from .graph import Graph
from .partition import N_SCLASS, VertexPartition
from .weighting import vertex_weights


def _s_degrees(part: VertexPartition) -> np.ndarray:
    """Number of S-neighbors per vertex."""
    g = part.graph
    u = g.edges[:, 0]
    v = g.edges[:, 1]
    in_s = part.sclass > 0
    n = g.n
    return np.bincount(u[in_s[v]], minlength=n) + np.bincount(
        v[in_s[u]], minlength=n
    )


def step1_initial(part: VertexPartition) -> np.ndarray:
    """Initial weight per edge, aligned with graph.edges."""
    g, p = part.graph, part.params
    u = g.edges[:, 0]
    v = g.edges[:, 1]
    bins = part.bins
    is_b = part.is_b
    f1 = np.ones(g.m, dtype=np.int64)

    fl = p.n // p.d
    frac_half_up = 2 * (p.n % p.d) >= p.d
    win_plain, win_corr = (fl + 1, fl + 2) if frac_half_up else (fl + 2, fl + 1)
    bb = is_b[u] & is_b[v]
    window = bb & (bins[u] + bins[v] >= (p.d - p.s_star) + 2)
    f1[window & ~part.corrected] = win_plain
    f1[window & part.corrected] = win_corr

    cross = is_b[u] ^ is_b[v]
    cls = np.maximum(part.sclass[u], part.sclass[v])
    ceil_nd = -(-p.n // p.d)
    f1[cross] = cls[cross] * p.omega + ceil_nd
    return f1


def split_increment(delta: int, parts: int) -> list:
    """Split a nonnegative increment into `parts` near-equal summands,
    larger ones first: split_increment(7, 3) == [3, 2, 2]."""
    base, extra = divmod(delta, parts)
    return [base + 1] * extra + [base] * (parts - extra)


def step2_level_bulk(part: VertexPartition, f1: np.ndarray) -> np.ndarray:
    """Increments on cross edges putting B sums on a consecutive segment.

    The B vertex of rank k (ascending label order) is driven to exactly
    step2_offset + k by spreading the difference over its cross edges,
    larger shares on lower-indexed S-neighbors.  Raises Step2RangeError if
    any vertex would need a negative total, has no cross edge, or needs a
    per-edge share above f2_cap.
    """
    g, p = part.graph, part.params
    b = part.b_order
    nb = b.size
    f1v = vertex_weights(g, f1)
    targets = p.step2_offset + np.arange(1, nb + 1, dtype=np.int64)
    delta = targets - f1v[b]
    if (delta < 0).any():
        k = int(np.argmax(delta < 0))
        raise Step2RangeError(
            f"rank {k + 1} (vertex {int(b[k])}) already exceeds its target "
            f"by {int(-delta[k])}"
        )
    deg_s = _s_degrees(part)[b]
    if (deg_s == 0).any():
        k = int(np.argmax(deg_s == 0))
        raise Step2RangeError(
            f"bulk vertex {int(b[k])} has no edge into the designated part"
        )
    need = -(-delta // deg_s)
    if (need > p.f2_cap).any():
        k = int(np.argmax(need > p.f2_cap))
        raise Step2RangeError(
            f"rank {k + 1} (vertex {int(b[k])}) needs per-edge increment "
            f"{int(need[k])} > cap {p.f2_cap}"
        )

    u = g.edges[:, 0]
    v = g.edges[:, 1]
    cross = part.is_b[u] ^ part.is_b[v]
    eid = np.flatnonzero(cross)
    b_end = np.where(part.is_b[u[eid]], u[eid], v[eid])
    s_end = np.where(part.is_b[u[eid]], v[eid], u[eid])
    rank_of = np.full(g.n, -1, dtype=np.int64)
    rank_of[b] = np.arange(nb)
    ranks = rank_of[b_end]
    order = np.lexsort((s_end, ranks))
    eid = eid[order]
    ranks = ranks[order]
    # position of each edge within its vertex group, groups are contiguous
    starts = np.flatnonzero(np.diff(ranks, prepend=-1))
    group_start = np.repeat(starts, np.diff(np.append(starts, ranks.size)))
    pos = np.arange(ranks.size) - group_start
    f2 = np.zeros(g.m, dtype=np.int64)
    f2[eid] = delta[ranks] // deg_s[ranks] + (pos < delta[ranks] % deg_s[ranks])
    return f2


def claim_step1_ranges(part: VertexPartition, f1: np.ndarray) -> dict:
    """Observed vs admissible step-1 weight ranges per edge class."""
    g, p = part.graph, part.params
    u = g.edges[:, 0]
    v = g.edges[:, 1]
    is_b = part.is_b
    bb = is_b[u] & is_b[v]
    cross = is_b[u] ^ is_b[v]
    ss = ~is_b[u] & ~is_b[v]
    fl = p.n // p.d
    ceil_nd = -(-p.n // p.d)
    out = {}
    ok = True
    for name, mask, lo, hi in (
        ("bulk", bb, 1, fl + 2),
        ("cross", cross, ceil_nd, ceil_nd + N_SCLASS * p.omega),
        ("designated", ss, 1, 1),
    ):
        if mask.any():
            w_lo, w_hi = int(f1[mask].min()), int(f1[mask].max())
        else:
            w_lo, w_hi = lo, lo  # vacuous
        good = lo <= w_lo and w_hi <= hi
        ok &= good
        out[name] = {"min": w_lo, "max": w_hi, "lo": lo, "hi": hi, "ok": good}
    out["ok"] = ok
    return out


def claim_step12_ranges(part: VertexPartition, w12: np.ndarray) -> dict:
    """Same as claim_step1_ranges with the cross cap widened by f2_cap."""
    p = part.params
    out = claim_step1_ranges(part, w12)
    cross = out["cross"]
    hi = cross["hi"] + p.f2_cap
    good = cross["lo"] <= cross["min"] and cross["max"] <= hi
    cross["hi"] = hi
    cross["ok"] = good
    out["ok"] = out["bulk"]["ok"] and out["designated"]["ok"] and good
    return out


@dataclass
class SOrder:
    """Processing order over the designated part."""

    order: list  # all S vertices in processing order
    pos: np.ndarray  # position per vertex, -1 outside S
    pairs: list  # (r, t) per component of the final class, t processed last


def build_s_order(part: VertexPartition) -> SOrder:
    """Classes 1..12 by ascending label, then the final class component by
    component as a reversed breadth-first order.

    In a reversed BFS every vertex except the root keeps a later neighbor
    (its parent), so only roots lack a forward edge; each root t and the
    first vertex r discovered from it form the terminal pair handled
    specially in step 3.  A singleton component leaves no pair partner and
    aborts, as does any earlier vertex without a forward edge.
    """
    g = part.graph
    sclass = part.sclass
    order = []
    for c in range(1, N_SCLASS):
        verts = np.flatnonzero(sclass == c)
        order.extend(int(w) for w in verts[np.lexsort((verts, part.x[verts]))])

    s13 = np.flatnonzero(sclass == N_SCLASS)
    in13 = np.zeros(g.n, dtype=bool)
    in13[s13] = True
    seen = np.zeros(g.n, dtype=bool)
    pairs = []
    for root in s13:  # ascending, so components come up by min vertex
        root = int(root)
        if seen[root]:
            continue
        bfs = [root]
        seen[root] = True
        head = 0
        while head < len(bfs):
            w = bfs[head]
            head += 1
            for nb in g.neighbors(w):
                nb = int(nb)
                if in13[nb] and not seen[nb]:
                    seen[nb] = True
                    bfs.append(nb)
        if len(bfs) == 1:
            raise SOrderError(
                f"vertex {root} is isolated inside the final class"
            )
        pairs.append((bfs[1], root))
        order.extend(reversed(bfs))

    pos = np.full(g.n, -1, dtype=np.int64)
    for i, w in enumerate(order):
        pos[w] = i
    roots = {t for _, t in pairs}
    for w in order:
        if w in roots:
            continue
        nbrs = g.neighbors(w)
        s_nbrs = nbrs[sclass[nbrs] > 0]
        if not (pos[s_nbrs] > pos[w]).any():
            raise SOrderError(f"vertex {w} has no forward edge")
    return SOrder(order=order, pos=pos, pairs=pairs)


def ap_class_of(w: int, q: int):
    """AP class of a sum value: class (lam, a) holds {2*lam*q+a, (2*lam+1)*q+a}."""
    return ((w // q) >> 1, w % q)


@dataclass
class Step3Result:
    f3: np.ndarray  # per-edge additions, nonzero only inside S
    assigned: dict  # vertex -> (lam, a)
    s_order: SOrder


def step3_distinguish(
    part: VertexPartition, base: np.ndarray, sorder: SOrder | None = None
) -> Step3Result:
    """Separate all designated-part sums within each class S_i.

    Every edge inside S starts at quantum q.  Vertices are processed in
    build_s_order order; a processed vertex first picks the least-used sum
    residue in its class via its first forward edge, then shifts by whole
    quanta (one per edge: +q on each remaining forward edge or on a
    backward edge whose settled endpoint sits at the lower member of its
    class, -q on a backward edge whose endpoint sits at the upper member)
    until its sum lands on a class not yet assigned in S_i.  Settled
    endpoints toggled this way stay inside their own class, so the
    invariant survives to the end.  Terminal pairs (r, t) instead share one
    residue-fixing addition on their joint edge and settle on backward
    edges alone.
    """
    g, p = part.graph, part.params
    q = p.q
    sclass = part.sclass
    if sorder is None:
        sorder = build_s_order(part)
    pos = sorder.pos

    f3 = np.zeros(g.m, dtype=np.int64)
    u = g.edges[:, 0]
    v = g.edges[:, 1]
    ss_edge = (sclass[u] > 0) & (sclass[v] > 0)
    f3[ss_edge] = q
    sums = vertex_weights(g, base + f3)

    s_sizes = np.bincount(sclass, minlength=N_SCLASS + 1)[1:]
    assigned = [set() for _ in range(N_SCLASS)]
    res_count = [np.zeros(q, dtype=np.int64) for _ in range(N_SCLASS)]
    state = np.full(g.n, -1, dtype=np.int8)  # 0 lower member, 1 upper
    assigned_class = {}

    def s_edges(w):
        nbrs, eids = g.neighbor_edge_pairs(w)
        keep = sclass[nbrs] > 0
        return nbrs[keep], eids[keep]

    def scale_guard(w, deg_s):
        ci = sclass[w]
        need = 4 * int(s_sizes[ci - 1]) + 2 * q
        if q * deg_s < need:
            raise Step3InfeasibleError(
                f"vertex {int(w)} in class {int(ci)}: q*deg_S = {q * deg_s} "
                f"< {need}; separation infeasible at this scale"
            )

    def settle(w, start, b_small, b_large, f_other, cls_idx):
        """Shift w's sum by whole quanta to the smallest unblocked value."""
        blocked = assigned[cls_idx]
        chosen = None
        for mm in range(-len(b_large), len(b_small) + len(f_other) + 1):
            val = start + mm * q
            if val < 0:
                continue
            if ap_class_of(val, q) not in blocked:
                chosen = mm
                break
        if chosen is None:
            raise Step3InfeasibleError(
                f"no admissible sum value at vertex {int(w)} "
                f"(class {cls_idx + 1}, {len(blocked)} classes assigned)"
            )
        if chosen > 0:
            take = b_small[:chosen]
            for nb, eid in take:
                f3[eid] += q
                sums[nb] += q
                sums[w] += q
                state[nb] = 1
            for nb, eid in f_other[: chosen - len(take)]:
                f3[eid] += q
                sums[nb] += q
                sums[w] += q
        elif chosen < 0:
            for nb, eid in b_large[:-chosen]:
                f3[eid] -= q
                sums[nb] -= q
                sums[w] -= q
                state[nb] = 0
        cls = ap_class_of(int(sums[w]), q)
        assigned[cls_idx].add(cls)
        assigned_class[int(w)] = cls
        res_count[cls_idx][cls[1]] += 1
        state[w] = (int(sums[w]) // q) & 1

    def split_edges(w):
        nbrs, eids = s_edges(w)
        fwd = [
            (int(a), int(e)) for a, e in zip(nbrs, eids) if pos[a] > pos[w]
        ]
        bwd_small = []
        bwd_large = []
        for a, e in zip(nbrs, eids):
            if pos[a] < pos[w]:
                if state[a] == 0:
                    bwd_small.append((int(a), int(e)))
                elif state[a] == 1:
                    bwd_large.append((int(a), int(e)))
        return fwd, bwd_small, bwd_large

    pair_of = {r: t for r, t in sorder.pairs}
    roots = {t for _, t in sorder.pairs}

    for w in sorder.order:
        if w in roots:
            continue  # settled together with its pair partner
        nbrs, eids = s_edges(w)
        scale_guard(w, nbrs.size)
        if w in pair_of:
            t = pair_of[w]
            t_nbrs, _ = s_edges(t)
            scale_guard(t, t_nbrs.size)
            cls_idx = N_SCLASS - 1
            rc = res_count[cls_idx]
            cap = 2 * int(s_sizes[cls_idx])
            x_add = None
            for xx in range(q):
                if (
                    q * rc[(int(sums[w]) + xx) % q] <= cap
                    and q * rc[(int(sums[t]) + xx) % q] <= cap
                ):
                    x_add = xx
                    break
            if x_add is None:
                raise Step3InfeasibleError(
                    f"no residue with spare capacity for pair "
                    f"({int(w)}, {int(t)})"
                )
            eid_rt = int(g.edge_ids([w], [t])[0])
            f3[eid_rt] += x_add
            sums[w] += x_add
            sums[t] += x_add
            fwd, b_small, b_large = split_edges(w)
            # the pair edge is w's only forward edge; settle on backward only
            settle(w, int(sums[w]), b_small, b_large, [], cls_idx)
            fwd_t, bs_t, bl_t = split_edges(t)
            bs_t = [(a, e) for a, e in bs_t if a != w]
            bl_t = [(a, e) for a, e in bl_t if a != w]
            settle(t, int(sums[t]), bs_t, bl_t, [], cls_idx)
            continue

        cls_idx = int(sclass[w]) - 1
        fwd, b_small, b_large = split_edges(w)
        if not fwd:
            raise SOrderError(f"vertex {int(w)} has no forward edge")
        rc = res_count[cls_idx]
        a_res = int(np.argmin(rc))
        delta = (a_res - int(sums[w])) % q
        nb0, e0 = fwd[0]
        f3[e0] += delta
        sums[w] += delta
        sums[nb0] += delta
        settle(w, int(sums[w]), b_small, b_large, fwd[1:], cls_idx)

    if f3.min() < 0 or f3.max() > 3 * q:
        raise AssertionError("quantum accounting broke the 3q envelope")
    return Step3Result(f3=f3, assigned=assigned_class, s_order=sorder)
