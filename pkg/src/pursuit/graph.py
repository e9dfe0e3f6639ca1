"""Immutable graph views and the BFS kernels everything else builds on.

Graphs are simple and undirected, vertices are 0..n-1.  A GraphView keeps
adjacency in CSR form (numpy int32 arrays) so that sphere/ball queries and
multi-source BFS run at array speed on graphs with ~10^6 edges.  All
mutating workflows go through `from_edges`, which validates and
canonicalizes; there is no in-place edge surgery.

Distance conventions: distances are int32, unreachable is the sentinel -1
(never a large magic number).
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "GraphView",
    "from_edges",
    "sphere",
    "ball",
    "set_sphere",
    "set_ball",
    "closed_neighborhood",
    "components",
    "bfs_distances",
    "bfs_layers",
    "two_nearest_source_distances",
    "shortest_path",
    "read_edge_list",
    "write_edge_list",
    "to_edge_list_text",
    "parse_edge_list_text",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "star_graph",
    "petersen_graph",
    "grid_graph",
    "UNREACHABLE",
]

UNREACHABLE = np.int32(-1)


class GraphView:
    """Immutable simple undirected graph with CSR adjacency."""

    __slots__ = ("n", "_indptr", "_indices", "_edges")

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray, edges: np.ndarray):
        self.n = int(n)
        self._indptr = indptr
        self._indices = indices
        self._edges = edges
        for a in (self._indptr, self._indices, self._edges):
            a.setflags(write=False)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def edges(self) -> np.ndarray:
        """(m, 2) array of edges with u < v, sorted by (u, v)."""
        return self._edges

    def adjacency(self, v: int) -> np.ndarray:
        """Sorted neighbor array of v (read-only view)."""
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range for n={self.n}")
        return self._indices[self._indptr[v] : self._indptr[v + 1]]

    def degree(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range for n={self.n}")
        return int(self._indptr[v + 1] - self._indptr[v])

    def degrees(self) -> np.ndarray:
        return (self._indptr[1:] - self._indptr[:-1]).astype(np.int64)

    def mean_degree(self) -> float:
        return 2.0 * self.num_edges / self.n if self.n else 0.0

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        row = self.adjacency(u)
        i = int(np.searchsorted(row, v))
        return i < len(row) and row[i] == v

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        return self._indptr, self._indices

    def __eq__(self, other) -> bool:
        if not isinstance(other, GraphView):
            return NotImplemented
        return self.n == other.n and self._edges.shape == other._edges.shape and bool(
            np.array_equal(self._edges, other._edges)
        )

    def __hash__(self):
        return hash((self.n, self._edges.tobytes()))

    def __repr__(self) -> str:
        return f"GraphView(n={self.n}, m={self.num_edges})"


def from_edges(n: int, edge_iter: Iterable[tuple[int, int]]) -> GraphView:
    """Build a GraphView, validating simplicity.

    Rejects self-loops, out-of-range endpoints, and duplicate edges
    (either orientation counts as a duplicate).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    pairs = np.asarray(list(edge_iter), dtype=np.int64)
    if pairs.size == 0:
        pairs = pairs.reshape(0, 2)
    if pairs.ndim != 2 or pairs.shape[1] != 2:
        raise ValueError("edges must be (u, v) pairs")
    if pairs.size:
        if pairs.min() < 0 or pairs.max() >= n:
            raise ValueError("edge endpoint out of range")
        if np.any(pairs[:, 0] == pairs[:, 1]):
            raise ValueError("self-loop rejected")
        lo = np.minimum(pairs[:, 0], pairs[:, 1])
        hi = np.maximum(pairs[:, 0], pairs[:, 1])
        order = np.lexsort((hi, lo))
        lo, hi = lo[order], hi[order]
        if len(lo) > 1 and np.any((lo[1:] == lo[:-1]) & (hi[1:] == hi[:-1])):
            raise ValueError("duplicate edge rejected")
        edges = np.column_stack([lo, hi]).astype(np.int32)
    else:
        edges = np.zeros((0, 2), dtype=np.int32)

    deg = np.zeros(n, dtype=np.int64)
    if len(edges):
        np.add.at(deg, edges[:, 0], 1)
        np.add.at(deg, edges[:, 1], 1)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(deg, out=indptr[1:])
    indices = np.zeros(2 * len(edges), dtype=np.int32)
    if len(edges):
        # fill rows, then sort each row once
        fill = indptr[:-1].copy()
        for u, v in edges:
            indices[fill[u]] = v
            fill[u] += 1
            indices[fill[v]] = u
            fill[v] += 1
        for v in range(n):
            seg = indices[indptr[v] : indptr[v + 1]]
            seg.sort()
    return GraphView(n, indptr, indices, edges)


# ---------------------------------------------------------------------------
# BFS kernels


def _gather_neighbors(indptr: np.ndarray, indices: np.ndarray, verts: np.ndarray) -> np.ndarray:
    """Concatenated neighbor lists of `verts` (duplicates preserved)."""
    if len(verts) == 0:
        return np.zeros(0, dtype=np.int32)
    starts = indptr[verts]
    counts = indptr[verts + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return np.zeros(0, dtype=np.int32)
    base = np.repeat(starts, counts)
    shift = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts)
    return indices[base + shift]


def bfs_distances(g: GraphView, sources: Sequence[int], max_depth: int | None = None) -> np.ndarray:
    """Multi-source BFS distance array; -1 marks unreached vertices."""
    indptr, indices = g.csr()
    dist = np.full(g.n, UNREACHABLE, dtype=np.int32)
    src = np.unique(np.asarray(list(sources), dtype=np.int64))
    if src.size and (src.min() < 0 or src.max() >= g.n):
        raise ValueError("source vertex out of range")
    if src.size == 0:
        return dist
    dist[src] = 0
    frontier = src
    depth = 0
    while len(frontier):
        if max_depth is not None and depth >= max_depth:
            break
        depth += 1
        nbrs = _gather_neighbors(indptr, indices, frontier)
        if len(nbrs) == 0:
            break
        nbrs = np.unique(nbrs)
        nbrs = nbrs[dist[nbrs] == UNREACHABLE]
        if len(nbrs) == 0:
            break
        dist[nbrs] = depth
        frontier = nbrs
    return dist


def bfs_layers(g: GraphView, sources: Sequence[int], max_depth: int | None = None) -> list[np.ndarray]:
    """Layers of a multi-source BFS; layers[r] holds vertices at distance r."""
    indptr, indices = g.csr()
    src = np.unique(np.asarray(list(sources), dtype=np.int64))
    if src.size and (src.min() < 0 or src.max() >= g.n):
        raise ValueError("source vertex out of range")
    layers: list[np.ndarray] = []
    if src.size == 0:
        return layers
    seen = np.zeros(g.n, dtype=bool)
    seen[src] = True
    frontier = src
    layers.append(frontier)
    depth = 0
    while len(frontier):
        if max_depth is not None and depth >= max_depth:
            break
        depth += 1
        nbrs = _gather_neighbors(indptr, indices, frontier)
        if len(nbrs) == 0:
            break
        nbrs = np.unique(nbrs)
        nbrs = nbrs[~seen[nbrs]]
        if len(nbrs) == 0:
            break
        seen[nbrs] = True
        layers.append(nbrs)
        frontier = nbrs
    return layers


def sphere(g: GraphView, v: int, r: int) -> frozenset[int]:
    """Vertices at distance exactly r from v."""
    if r < 0:
        raise ValueError("radius must be non-negative")
    layers = bfs_layers(g, [v], max_depth=r)
    if r < len(layers):
        return frozenset(int(x) for x in layers[r])
    return frozenset()


def ball(g: GraphView, v: int, r: int) -> frozenset[int]:
    """Vertices at distance at most r from v."""
    if r < 0:
        raise ValueError("radius must be non-negative")
    layers = bfs_layers(g, [v], max_depth=r)
    out: set[int] = set()
    for layer in layers:
        out.update(int(x) for x in layer)
    return frozenset(out)


def set_sphere(g: GraphView, vs: Iterable[int], r: int) -> frozenset[int]:
    """Vertices at distance exactly r from the set vs (multi-source)."""
    if r < 0:
        raise ValueError("radius must be non-negative")
    layers = bfs_layers(g, list(vs), max_depth=r)
    if r < len(layers):
        return frozenset(int(x) for x in layers[r])
    return frozenset()


def set_ball(g: GraphView, vs: Iterable[int], r: int) -> frozenset[int]:
    """Vertices at distance at most r from the set vs."""
    if r < 0:
        raise ValueError("radius must be non-negative")
    layers = bfs_layers(g, list(vs), max_depth=r)
    out: set[int] = set()
    for layer in layers:
        out.update(int(x) for x in layer)
    return frozenset(out)


def closed_neighborhood(g: GraphView, vs: Iterable[int]) -> frozenset[int]:
    """The set vs together with every neighbor of a member."""
    return set_ball(g, vs, 1)


def components(g: GraphView) -> list[tuple[int, ...]]:
    """Connected components, each sorted, ordered by smallest member."""
    seen = np.zeros(g.n, dtype=bool)
    out: list[tuple[int, ...]] = []
    for v in range(g.n):
        if seen[v]:
            continue
        dist = bfs_distances(g, [v])
        comp = np.flatnonzero(dist >= 0)
        seen[comp] = True
        out.append(tuple(int(x) for x in comp))
    return out


def shortest_path(g: GraphView, src: int, dst: int) -> list[int] | None:
    """One shortest path src -> dst, ties broken toward smaller vertex ids.

    Walks parents from dst back to src over a BFS distance field, always
    picking the smallest-id neighbor one layer closer, so the result is
    deterministic.  Returns None when dst is unreachable.
    """
    dist = bfs_distances(g, [src])
    if dist[dst] < 0:
        return None
    path = [dst]
    cur = dst
    while cur != src:
        row = g.adjacency(cur)
        closer = row[dist[row] == dist[cur] - 1]
        cur = int(closer[0])
        path.append(cur)
    path.reverse()
    return path


def two_nearest_source_distances(
    g: GraphView, sources: Sequence[int]
) -> tuple[np.ndarray, np.ndarray]:
    """Per vertex, the two smallest distances to the source multiset.

    `sources` may repeat a vertex; a doubled source counts twice, so the
    second-smallest distance through it equals the smallest.  Returns
    (d1, d2) int32 arrays with -1 where fewer than one / two sources are
    reachable.  Runs a label-propagating BFS that keeps at most two
    distinct source labels per vertex; each level is resolved with array
    ops so large graphs stay cheap.
    """
    indptr, indices = g.csr()
    n = g.n
    src = np.asarray(list(sources), dtype=np.int64)
    if src.size and (src.min() < 0 or src.max() >= n):
        raise ValueError("source vertex out of range")
    d1 = np.full(n, -1, dtype=np.int32)
    d2 = np.full(n, -1, dtype=np.int32)
    s1 = np.full(n, -1, dtype=np.int64)
    if src.size == 0:
        return d1, d2
    uniq, counts = np.unique(src, return_counts=True)
    d1[uniq] = 0
    s1[uniq] = uniq
    d2[uniq[counts >= 2]] = 0
    multi = np.zeros(n, dtype=bool)
    multi[uniq[counts >= 2]] = True

    frontier_v = uniq
    frontier_s = uniq
    level = 0
    while len(frontier_v):
        level += 1
        starts = indptr[frontier_v]
        cnt = indptr[frontier_v + 1] - starts
        total = int(cnt.sum())
        if total == 0:
            break
        base = np.repeat(starts, cnt)
        shift = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(cnt) - cnt, cnt)
        nv = indices[base + shift].astype(np.int64)
        ns = np.repeat(frontier_s, cnt)
        # drop labels the target vertex cannot accept
        keep = (d2[nv] == -1) & (s1[nv] != ns)
        nv, ns = nv[keep], ns[keep]
        if len(nv) == 0:
            break
        order = np.lexsort((ns, nv))
        nv, ns = nv[order], ns[order]
        dup = np.zeros(len(nv), dtype=bool)
        dup[1:] = (nv[1:] == nv[:-1]) & (ns[1:] == ns[:-1])
        nv, ns = nv[~dup], ns[~dup]
        first = np.ones(len(nv), dtype=bool)
        first[1:] = nv[1:] != nv[:-1]
        second = np.zeros(len(nv), dtype=bool)
        second[1:] = first[:-1] & (nv[1:] == nv[:-1])
        had_d1 = d1[nv] != -1
        acc_d2_existing = first & had_d1
        acc_d1_new = first & ~had_d1
        acc_d2_new = second & ~had_d1
        d2[nv[acc_d2_existing]] = level
        d1[nv[acc_d1_new]] = level
        s1[nv[acc_d1_new]] = ns[acc_d1_new]
        d2[nv[acc_d2_new]] = level
        newly = acc_d2_existing | acc_d1_new | acc_d2_new
        frontier_v = nv[newly]
        frontier_s = ns[newly]

    # a doubled source vertex supplies its own second-nearest distance
    has = s1 >= 0
    dup_src = np.zeros(n, dtype=bool)
    dup_src[has] = multi[s1[has]]
    fix = dup_src & ((d2 == -1) | (d2 > d1))
    d2[fix] = d1[fix]
    return d1, d2


# ---------------------------------------------------------------------------
# Canonical edge-list serialization
#
# First line "n m", then m lines "u v" with u < v, rows sorted by (u, v),
# vertices 0-indexed, "\n" line endings.  This is the byte-exact format the
# CLI reads and writes.


def to_edge_list_text(g: GraphView) -> str:
    lines = [f"{g.n} {g.num_edges}"]
    for u, v in g.edges():
        lines.append(f"{int(u)} {int(v)}")
    return "\n".join(lines) + "\n"


def parse_edge_list_text(text: str) -> GraphView:
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty edge list")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("line 1: expected 'n m'")
    n, m = int(head[0]), int(head[1])
    if len(lines) < 1 + m:
        raise ValueError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for i in range(m):
        parts = lines[1 + i].split()
        if len(parts) != 2:
            raise ValueError(f"line {i + 2}: expected 'u v'")
        u, v = int(parts[0]), int(parts[1])
        if not u < v:
            raise ValueError(f"line {i + 2}: requires u < v")
        edges.append((u, v))
    for a, b in zip(edges, edges[1:]):
        if b <= a:
            raise ValueError("edge lines not sorted")
    return from_edges(n, edges)


def write_edge_list(g: GraphView, path) -> None:
    with open(path, "w") as fh:
        fh.write(to_edge_list_text(g))


def read_edge_list(path) -> GraphView:
    with open(path) as fh:
        return parse_edge_list_text(fh.read())


# ---------------------------------------------------------------------------
# Named graphs used throughout the tests and the CLI


def path_graph(k: int) -> GraphView:
    return from_edges(k, [(i, i + 1) for i in range(k - 1)])


def cycle_graph(k: int) -> GraphView:
    if k < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def complete_graph(k: int) -> GraphView:
    return from_edges(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def star_graph(leaves: int) -> GraphView:
    return from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen_graph() -> GraphView:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edges(10, outer + spokes + inner)


def grid_graph(rows: int, cols: int) -> GraphView:
    def vid(r, c):
        return r * cols + c

    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < rows:
                edges.append((vid(r, c), vid(r + 1, c)))
    return from_edges(rows * cols, edges)
