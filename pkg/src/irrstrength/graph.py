"""Simple undirected graphs: construction, edge-list files, family generators.

Vertices are dense 0-based indices.  Edges are stored once as (u, v) with
u < v, sorted lexicographically, in a compact numpy array so that graphs
with a few million edges stay cheap to hold and to scan.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np


class GraphFormatError(ValueError):
    """Malformed edge-list input or inconsistent edge data."""


class FamilyError(ValueError):
    """Invalid graph-family specification."""


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1.

    Connectivity is not required or asserted anywhere in this class.
    """

    __slots__ = ("n", "edges", "_indptr", "_nbr", "_nbr_eid", "_degrees")

    def __init__(self, n: int, edges=None):
        if n < 0:
            raise GraphFormatError("vertex count must be nonnegative")
        self.n = int(n)
        if edges is None:
            arr = np.empty((0, 2), dtype=np.int64)
        else:
            arr = np.asarray(edges, dtype=np.int64)
            if arr.size == 0:
                arr = np.empty((0, 2), dtype=np.int64)
            if arr.ndim != 2 or arr.shape[1] != 2:
                raise GraphFormatError("edges must be pairs")
        if arr.size:
            if arr.min() < 0 or arr.max() >= self.n:
                bad = arr[(arr < 0) | (arr >= self.n)]
                raise GraphFormatError(
                    f"edge endpoint {int(bad[0])} out of range for n={self.n}"
                )
            if (arr[:, 0] == arr[:, 1]).any():
                bad = int(np.flatnonzero(arr[:, 0] == arr[:, 1])[0])
                raise GraphFormatError(f"self-loop at vertex {int(arr[bad, 0])}")
            lo = np.minimum(arr[:, 0], arr[:, 1])
            hi = np.maximum(arr[:, 0], arr[:, 1])
            keys = lo * self.n + hi
            order = np.argsort(keys, kind="stable")
            keys = keys[order]
            if (keys[1:] == keys[:-1]).any():
                i = int(np.flatnonzero(keys[1:] == keys[:-1])[0])
                u, v = divmod(int(keys[i]), self.n)
                raise GraphFormatError(f"duplicate edge ({u}, {v})")
            arr = np.column_stack((lo[order], hi[order]))
        self.edges = arr
        self.edges.setflags(write=False)
        self._indptr = None
        self._nbr = None
        self._degrees = None

    @property
    def m(self) -> int:
        return self.edges.shape[0]

    def _build_adjacency(self):
        if self._indptr is not None:
            return
        ends = np.concatenate((self.edges[:, 0], self.edges[:, 1]))
        other = np.concatenate((self.edges[:, 1], self.edges[:, 0]))
        eid = np.concatenate((np.arange(self.m), np.arange(self.m)))
        order = np.lexsort((other, ends))
        self._nbr = other[order].astype(np.int64)
        self._nbr_eid = eid[order]
        counts = np.bincount(ends, minlength=self.n)
        self._indptr = np.concatenate(([0], np.cumsum(counts)))
        self._degrees = counts

    @property
    def degrees(self) -> np.ndarray:
        self._build_adjacency()
        return self._degrees

    def degree(self, v: int) -> int:
        return int(self.degrees[v])

    def neighbors(self, v: int) -> np.ndarray:
        """Neighbors of v in ascending index order."""
        self._build_adjacency()
        return self._nbr[self._indptr[v] : self._indptr[v + 1]]

    def incident_edges(self, v: int) -> np.ndarray:
        """Indices into self.edges of the edges at v, ascending."""
        self._build_adjacency()
        return np.sort(self._nbr_eid[self._indptr[v] : self._indptr[v + 1]])

    def neighbor_edge_pairs(self, v: int):
        """(neighbors ascending, matching edge indices) for vertex v."""
        self._build_adjacency()
        sl = slice(self._indptr[v], self._indptr[v + 1])
        return self._nbr[sl], self._nbr_eid[sl]

    def is_regular(self):
        """Common degree d if the graph is regular (n >= 1), else None."""
        if self.n == 0:
            return None
        degs = self.degrees
        d = int(degs[0])
        return d if bool((degs == d).all()) else None

    def edge_keys(self) -> np.ndarray:
        """Encoded keys u*n+v aligned with self.edges (ascending)."""
        return self.edges[:, 0] * self.n + self.edges[:, 1]

    def edge_ids(self, u, v) -> np.ndarray:
        """Indices into self.edges for the given endpoint arrays.

        Raises GraphFormatError if any queried pair is not an edge.
        """
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        lo = np.minimum(u, v)
        hi = np.maximum(u, v)
        keys = lo * self.n + hi
        all_keys = self.edge_keys()
        idx = np.searchsorted(all_keys, keys)
        ok = (idx < self.m) & (all_keys[np.minimum(idx, self.m - 1)] == keys)
        if not ok.all():
            j = int(np.flatnonzero(~ok)[0])
            raise GraphFormatError(f"({int(lo[j])}, {int(hi[j])}) is not an edge")
        return idx

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.edges, other.edges)

    def __hash__(self):
        return hash((self.n, self.edges.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def load_edge_list(path) -> Graph:
    """Parse an edge-list file.

    Format: optional first significant line "n <count>", then one "u v" per
    line.  '#' starts a comment.  Without a header the vertex count is
    1 + max index and every index below the maximum must occur in some edge;
    silent gaps are rejected rather than compacted.
    """
    text = Path(path).read_text(encoding="utf-8")
    declared_n = None
    pairs = []
    seen_edge_line = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "n":
            if seen_edge_line or declared_n is not None:
                raise GraphFormatError(f"line {lineno}: unexpected header")
            if len(toks) != 2 or not toks[1].isdigit():
                raise GraphFormatError(f"line {lineno}: malformed header")
            declared_n = int(toks[1])
            continue
        if len(toks) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer vertex") from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"line {lineno}: negative vertex index")
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop at {u}")
        pairs.append((u, v))
        seen_edge_line = True

    if declared_n is not None:
        n = declared_n
        if pairs:
            top = max(max(p) for p in pairs)
            if top >= n:
                raise GraphFormatError(f"vertex {top} exceeds declared n {n}")
    else:
        if not pairs:
            return Graph(0)
        n = 1 + max(max(p) for p in pairs)
        present = set()
        for u, v in pairs:
            present.add(u)
            present.add(v)
        if len(present) != n:
            missing = min(set(range(n)) - present)
            raise GraphFormatError(
                f"vertex {missing} missing from file without a header"
            )
    return Graph(n, pairs)


def edge_list_text(g: Graph) -> str:
    """Canonical edge-list form: "n <count>" then one "u v" line per edge."""
    lines = [f"n {g.n}"]
    lines.extend(f"{int(u)} {int(v)}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def save_edge_list(g: Graph, path) -> None:
    Path(path).write_text(edge_list_text(g), encoding="utf-8")


@dataclass(frozen=True)
class GraphFamilySpec:
    """Parameters for a deterministic family generator."""

    family: str
    n: int | None = None
    d: int | None = None
    connections: tuple[int, ...] | None = None
    seed: int | None = None


def _complete(n: int) -> Graph:
    if n < 1:
        raise FamilyError("complete: n >= 1 required")
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def _cycle(n: int) -> Graph:
    if n < 3:
        raise FamilyError("cycle: n >= 3 required")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def _circulant(n: int, connections) -> Graph:
    if n < 3:
        raise FamilyError("circulant: n >= 3 required")
    if not connections:
        raise FamilyError("circulant: nonempty connection set required")
    conns = sorted(set(int(s) for s in connections))
    if conns != sorted(int(s) for s in connections):
        raise FamilyError("circulant: connection offsets must be distinct")
    if conns[0] < 1 or conns[-1] > n // 2:
        raise FamilyError("circulant: offsets must lie in [1, n//2]")
    edges = set()
    for s in conns:
        for i in range(n):
            j = (i + s) % n
            edges.add((min(i, j), max(i, j)))
    return Graph(n, sorted(edges))


def _hypercube(n: int) -> Graph:
    if n < 2 or n & (n - 1):
        raise FamilyError("hypercube: n must be a power of two, n >= 2")
    dim = n.bit_length() - 1
    edges = []
    for v in range(n):
        for b in range(dim):
            w = v ^ (1 << b)
            if v < w:
                edges.append((v, w))
    return Graph(n, edges)


def _petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


_SWAP_BATCH = 1 << 15


def _random_regular(n: int, d: int, seed: int) -> Graph:
    """Configuration model with uniform random edge-swap repair.

    Stubs are paired uniformly; loops and duplicate copies are then removed
    by random 2-swaps against uniformly chosen partner edges.  If a pairing
    accumulates 100*n*d failed swap attempts the whole pairing restarts.
    """
    if n < 1:
        raise FamilyError("random-regular: n >= 1 required")
    if d < 0 or d >= n:
        raise FamilyError("random-regular: 0 <= d < n required")
    if (n * d) % 2:
        raise FamilyError("random-regular: n*d must be even")
    if d == 0:
        return Graph(n)
    rng = np.random.Generator(np.random.PCG64(seed))
    max_fail = 100 * n * d
    m = n * d // 2

    while True:
        stubs = np.repeat(np.arange(n, dtype=np.int64), d)
        rng.shuffle(stubs)
        a = np.minimum(stubs[0::2], stubs[1::2])
        b = np.maximum(stubs[0::2], stubs[1::2])
        key_arr = a * n + b
        uniq, inverse, counts = np.unique(
            key_arr, return_inverse=True, return_counts=True
        )
        bad = np.flatnonzero((a == b) | (counts[inverse] > 1)).tolist()
        cnt: dict[int, int] = dict(zip(uniq.tolist(), counts.tolist()))
        keys = key_arr.tolist()
        failed = 0
        rnd_idx = rnd_flip = None
        pos = _SWAP_BATCH  # force first refill
        while bad and failed <= max_fail:
            i = bad[-1]
            k1 = keys[i]
            if k1 % n != k1 // n and cnt[k1] == 1:
                bad.pop()  # cleaned up by an earlier swap
                continue
            if pos >= _SWAP_BATCH:
                rnd_idx = rng.integers(0, m, size=_SWAP_BATCH)
                rnd_flip = rng.integers(0, 2, size=_SWAP_BATCH)
                pos = 0
            j = int(rnd_idx[pos])
            flip = int(rnd_flip[pos])
            pos += 1
            if j == i:
                failed += 1
                continue
            u1, v1 = divmod(k1, n)
            u2, v2 = divmod(keys[j], n)
            if flip:
                u2, v2 = v2, u2
            # proposed replacement pair: {u1, u2} and {v1, v2}
            if u1 == u2 or v1 == v2:
                failed += 1
                continue
            ka = (u1 * n + u2) if u1 < u2 else (u2 * n + u1)
            kb = (v1 * n + v2) if v1 < v2 else (v2 * n + v1)
            if ka == kb or cnt.get(ka, 0) or cnt.get(kb, 0):
                failed += 1
                continue
            k2 = keys[j]
            cnt[k1] -= 1
            cnt[k2] -= 1
            cnt[ka] = 1
            cnt[kb] = 1
            keys[i] = ka
            keys[j] = kb
            bad.pop()
        if not bad:
            arr = np.asarray(keys, dtype=np.int64)
            return Graph(n, np.column_stack((arr // n, arr % n)))
        # pairing was too tangled; redraw everything


def generate(spec: GraphFamilySpec) -> Graph:
    """Build the graph a family spec describes; pure function of the spec."""
    fam = spec.family
    if fam == "complete":
        if spec.n is None:
            raise FamilyError("complete: n required")
        return _complete(spec.n)
    if fam == "cycle":
        if spec.n is None:
            raise FamilyError("cycle: n required")
        return _cycle(spec.n)
    if fam == "circulant":
        if spec.n is None or not spec.connections:
            raise FamilyError("circulant: n and connections required")
        return _circulant(spec.n, spec.connections)
    if fam == "hypercube":
        if spec.n is None:
            raise FamilyError("hypercube: n required")
        return _hypercube(spec.n)
    if fam == "petersen":
        if spec.n not in (None, 10) or spec.d not in (None, 3):
            raise FamilyError("petersen: fixed 10-vertex cubic graph")
        return _petersen()
    if fam == "random-regular":
        if spec.n is None or spec.d is None or spec.seed is None:
            raise FamilyError("random-regular: n, d, seed required")
        return _random_regular(spec.n, spec.d, spec.seed)
    raise FamilyError(f"unknown family {fam!r}")
