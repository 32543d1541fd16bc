"""Random vertex partition into a bulk part and 13 small classes.

Each vertex draws a 64-bit label X_v; scaling by d yields a bin in 1..d.
The top s_star bins form the designated part S, split into 13 consecutive
classes S_1..S_13 of s_star/13 bins each; the remaining bins form B.  Six
families of balance conditions must hold before construction proceeds;
violated ones are repaired by redrawing only the randomness they depend on,
up to a caller-set budget.

All condition thresholds involve d raised to rational powers.  They are
reduced to exact integer bands once per parameter set so that membership
tests never depend on floating-point rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ParamsError, PartitionError
from .graph import Graph
from .ratpow import as_fraction, ceil_mul_pow, floor_mul_pow

N_SCLASS = 13

_U64_MAX = (1 << 64) - 1


@dataclass(frozen=True)
class ConstructionParams:
    """Derived tuning constants for one (n, d, epsilon, gamma) instance."""

    n: int
    d: int
    epsilon: Fraction
    gamma: Fraction
    beta: Fraction
    s_star: int
    omega: int
    alpha: Fraction
    q: int
    step2_offset: int
    f2_cap: int
    forward_range: int


def derive_params(n: int, d: int, eps, gamma) -> ConstructionParams:
    """Validate (eps, gamma) and compute all derived constants exactly."""
    if n < 1 or d < 1 or d >= n:
        raise ParamsError(f"need 1 <= d < n, got n={n}, d={d}")
    eps_f = as_fraction(eps)
    gamma_f = as_fraction(gamma)
    if not Fraction(0) < eps_f < Fraction(1, 4):
        raise ParamsError(f"epsilon must lie in (0, 1/4), got {eps_f}")
    if not Fraction(0) < 2 * gamma_f < eps_f:
        raise ParamsError(f"need 0 < 2*gamma < epsilon, got gamma={gamma_f}")
    beta = eps_f - 2 * gamma_f
    half = Fraction(1, 2)
    s_star = N_SCLASS * ceil_mul_pow(Fraction(1, N_SCLASS), d, half + eps_f)
    omega = max(ceil_mul_pow(n, d, -(1 + beta)), 2)
    rem = Fraction(n % d, d)
    alpha = max(rem, 1 - rem)
    q = -(-n // (3 * d))
    ceil_nd = -(-n // d)
    step2_offset = (
        d
        + (7 * omega + ceil_nd - 1) * s_star
        + ceil_mul_pow(250 * n, d, -(half - gamma_f))
    )
    f2_cap = ceil_mul_pow(1000 * n, d, -(1 + eps_f - gamma_f))
    forward_range = -(-3 * n // d)
    return ConstructionParams(
        n=n,
        d=d,
        epsilon=eps_f,
        gamma=gamma_f,
        beta=beta,
        s_star=s_star,
        omega=omega,
        alpha=alpha,
        q=q,
        step2_offset=step2_offset,
        f2_cap=f2_cap,
        forward_range=forward_range,
    )


@dataclass(frozen=True)
class ConditionThresholds:
    """Closed integer bands for the six condition families.

    Irrational band endpoints c + b*d^e are floored/ceiled exactly; for the
    families whose center varies with an index i the shared floor
    P = floor(b * d^e) turns each endpoint into pure integer arithmetic:
    floor((A + X)/D) == (A + floor(X)) // D whenever A, D are integers.
    """

    n_b_bins: int
    f1_lo: int
    f1_hi: int
    f2_lo: int
    f2_hi: int
    margin13: int  # floor(d^(1/2+gamma)), families 1 and 3
    p4: int  # floor(alpha_num * d^(1/2+gamma))
    alpha_num: int
    alpha_den: int
    p5: int  # floor(n * d^(gamma-1/2) * d) == floor(n * d^(1/2+gamma))
    p6: int  # same with 26n
    f6_lo: int
    f6_hi: int


@lru_cache(maxsize=32)
def thresholds(params: ConstructionParams) -> ConditionThresholds:
    n, d = params.n, params.d
    s_star = params.s_star
    e1 = Fraction(1, 2) + params.gamma
    margin13 = floor_mul_pow(1, d, e1)
    f2_margin = floor_mul_pow(N_SCLASS, d, e1)
    a_num = params.alpha.numerator
    a_den = params.alpha.denominator
    p4 = floor_mul_pow(a_num, d, e1)
    p5 = floor_mul_pow(n, d, e1)
    p6 = floor_mul_pow(26 * n, d, e1)
    center1 = s_star // N_SCLASS
    a6 = s_star * n
    d6 = N_SCLASS * d
    return ConditionThresholds(
        n_b_bins=d - s_star,
        f1_lo=center1 - margin13,
        f1_hi=center1 + margin13,
        f2_lo=s_star - f2_margin,
        f2_hi=s_star + f2_margin,
        margin13=margin13,
        p4=p4,
        alpha_num=a_num,
        alpha_den=a_den,
        p5=p5,
        p6=p6,
        f6_lo=-((p6 - a6) // d6),
        f6_hi=(a6 + p6) // d6,
    )


@dataclass
class VertexPartition:
    """One sampled partition plus the raw randomness it came from."""

    graph: Graph
    params: ConstructionParams
    x: np.ndarray  # uint64 label per vertex
    edge_x: np.ndarray  # uint64 correction draw per edge
    bins: np.ndarray  # 1..d per vertex
    sclass: np.ndarray  # 0 for B, else 1..13
    is_b: np.ndarray
    b_order: np.ndarray  # B vertices by ascending (x, index)
    corrected: np.ndarray  # bool per edge


def _bins_from_labels(x: np.ndarray, d: int) -> np.ndarray:
    """floor(x*d / 2^64) + 1 without 128-bit arithmetic."""
    hi = (x >> np.uint64(32)).astype(np.int64)
    lo = (x & np.uint64(0xFFFFFFFF)).astype(np.int64)
    return ((hi * d + ((lo * d) >> 32)) >> 32) + 1


def partition_from_labels(
    graph: Graph, params: ConstructionParams, x: np.ndarray, edge_x: np.ndarray
) -> VertexPartition:
    """Derive bins, classes, B-order and corrected edge labels from raw draws."""
    d = params.d
    s_star = params.s_star
    if s_star >= d:
        raise PartitionError(
            f"degenerate scale: s_star={s_star} needs d > s_star, got d={d}"
        )
    bins = _bins_from_labels(x, d)
    width = s_star // N_SCLASS
    in_s = bins > d - s_star
    sclass = np.where(in_s, N_SCLASS - (d - bins) // width, 0)
    is_b = ~in_s
    b_idx = np.flatnonzero(is_b)
    order = np.lexsort((b_idx, x[b_idx]))
    b_order = b_idx[order]
    u = graph.edges[:, 0]
    v = graph.edges[:, 1]
    bb = is_b[u] & is_b[v]
    a_num = params.alpha.numerator
    a_den = params.alpha.denominator
    if a_num == a_den:
        corrected = bb
    else:
        thr = np.uint64((a_num << 64) // a_den)
        corrected = bb & (edge_x < thr)
    return VertexPartition(
        graph=graph,
        params=params,
        x=x,
        edge_x=edge_x,
        bins=bins,
        sclass=sclass,
        is_b=is_b,
        b_order=b_order,
        corrected=corrected,
    )


def _fresh_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def _draw_u64(rng: np.random.Generator, size: int) -> np.ndarray:
    return rng.integers(0, _U64_MAX, size=size, dtype=np.uint64, endpoint=True)


def sample_partition(
    graph: Graph, params: ConstructionParams, seed: int
) -> VertexPartition:
    """One unchecked draw: vertex labels first, then edge draws."""
    rng = _fresh_rng(seed)
    x = _draw_u64(rng, graph.n)
    edge_x = _draw_u64(rng, graph.m)
    return partition_from_labels(graph, params, x, edge_x)


def partition_counts(part: VertexPartition) -> dict:
    """Class sizes: bulk part and each of the 13 designated classes."""
    s_sizes = np.bincount(part.sclass, minlength=N_SCLASS + 1)[1:]
    return {
        "b_size": int(part.is_b.sum()),
        "s_sizes": [int(c) for c in s_sizes],
        "s_size": int(s_sizes.sum()),
    }


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of one full condition check."""

    ok: bool
    counts: tuple  # violating witnesses per family, 6 entries
    first: tuple | None  # (family, vertex or -1, index or -1)


def check_conditions(part: VertexPartition) -> ConditionReport:
    """Evaluate all six condition families; exact integer comparisons only.

    The reported first violation is the lowest family index, then the lowest
    vertex, then the lowest class/bin index, which makes repair deterministic.
    """
    graph, params = part.graph, part.params
    n, d = params.n, params.d
    th = thresholds(params)
    nb = th.n_b_bins
    u = graph.edges[:, 0]
    v = graph.edges[:, 1]
    sclass = part.sclass
    bins = part.bins
    is_b = part.is_b

    keys = np.concatenate((u * (N_SCLASS + 1) + sclass[v], v * (N_SCLASS + 1) + sclass[u]))
    table = np.bincount(keys, minlength=n * (N_SCLASS + 1)).reshape(
        n, N_SCLASS + 1
    )
    cls_deg = table[:, 1:]

    viol1 = (cls_deg < th.f1_lo) | (cls_deg > th.f1_hi)
    deg_s = cls_deg.sum(axis=1)
    viol2 = (deg_s < th.f2_lo) | (deg_s > th.f2_hi)

    bb = is_b[u] & is_b[v]
    qual = bb & (bins[u] + bins[v] >= nb + 2)
    wcnt = np.bincount(u[qual], minlength=n) + np.bincount(v[qual], minlength=n)
    center = bins - 1
    viol3 = is_b & ((wcnt < center - th.margin13) | (wcnt > center + th.margin13))

    cqual = qual & part.corrected
    ccnt = np.bincount(u[cqual], minlength=n) + np.bincount(v[cqual], minlength=n)
    a_num, a_den, p4 = th.alpha_num, th.alpha_den, th.p4
    ib = np.flatnonzero(is_b)
    a_i = (bins[ib] - 1) * a_num
    lo4 = -((p4 - a_i) // a_den)
    hi4 = (a_i + p4) // a_den
    viol4 = np.zeros(n, dtype=bool)
    viol4[ib] = (ccnt[ib] < lo4) | (ccnt[ib] > hi4)

    hist = np.bincount(bins[is_b], minlength=nb + 1)[1 : nb + 1]
    prefix = np.cumsum(hist)
    idx = np.arange(1, nb + 1, dtype=np.int64)
    lo5 = -((th.p5 - idx * n) // d)
    hi5 = (idx * n + th.p5) // d
    viol5 = (prefix < lo5) | (prefix > hi5)

    s_sizes = np.bincount(sclass, minlength=N_SCLASS + 1)[1:]
    viol6 = (s_sizes < th.f6_lo) | (s_sizes > th.f6_hi)

    counts = (
        int(viol1.sum()),
        int(viol2.sum()),
        int(viol3.sum()),
        int(viol4.sum()),
        int(viol5.sum()),
        int(viol6.sum()),
    )
    first = None
    if counts[0]:
        rows = viol1.any(axis=1)
        w = int(np.argmax(rows))
        i = int(np.argmax(viol1[w])) + 1
        first = (1, w, i)
    elif counts[1]:
        first = (2, int(np.argmax(viol2)), -1)
    elif counts[2]:
        w = int(np.argmax(viol3))
        first = (3, w, int(bins[w]))
    elif counts[3]:
        w = int(np.argmax(viol4))
        first = (4, w, int(bins[w]))
    elif counts[4]:
        first = (5, -1, int(np.argmax(viol5)) + 1)
    elif counts[5]:
        first = (6, -1, int(np.argmax(viol6)) + 1)
    return ConditionReport(ok=first is None, counts=counts, first=first)


def resample_until_valid(
    graph: Graph, params: ConstructionParams, seed: int, budget: int
):
    """Draw a partition and repair violations by local redraws.

    Families 1-3 redraw the labels of the witness vertex and its neighbors;
    family 4 additionally redraws the correction draws of its incident
    edges; families 5 and 6 redraw every vertex label.  Redraws consume the
    same generator stream, vertices in ascending index order before edges.
    Returns (partition, resamples_used).  Raises PartitionError once
    `budget` resamples pass without all conditions holding.
    """
    if budget < 0:
        raise ParamsError(f"resample budget must be >= 0, got {budget}")
    rng = _fresh_rng(seed)
    x = _draw_u64(rng, graph.n)
    edge_x = _draw_u64(rng, graph.m)
    part = partition_from_labels(graph, params, x, edge_x)
    used = 0
    while True:
        report = check_conditions(part)
        if report.ok:
            return part, used
        if used >= budget:
            raise PartitionError(
                f"resample budget {budget} exhausted; "
                f"violations per family: {report.counts}"
            )
        fam, w, _ = report.first
        if fam in (1, 2, 3, 4):
            scope = np.unique(np.append(graph.neighbors(w), w))
            x[scope] = _draw_u64(rng, scope.size)
            if fam == 4:
                eids = graph.incident_edges(w)
                edge_x[eids] = _draw_u64(rng, eids.size)
        else:
            x = _draw_u64(rng, graph.n)
        used += 1
        part = partition_from_labels(graph, params, x, edge_x)
