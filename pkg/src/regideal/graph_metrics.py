"""Brute-force distances, eccentricity, radius, diameter and center."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .regular_graph import UnderlyingGraph
from .ring_core import ProductRing

# internal marker for "no path"; never exposed as a distance
UNREACHABLE = -1


@dataclass(frozen=True, eq=False)
class MetricReport:
    """All-pairs hop counts and the invariants derived from them.

    ``eccentricities`` are maxima over finite distances only. Radius,
    diameter and center are taken over those values, so for a disconnected
    graph they describe components rather than the whole graph.
    """

    dist: np.ndarray  # int16, UNREACHABLE where no path exists
    eccentricities: tuple[int, ...]
    radius: int | None
    diameter: int | None
    center: tuple[int, ...]
    connected: bool

    def distance(self, i: int, j: int) -> int | None:
        d = int(self.dist[i, j])
        return None if d == UNREACHABLE else d

    def distance_rows(self) -> list[list[int | None]]:
        return [[None if d == UNREACHABLE else int(d) for d in row] for row in self.dist]


def all_pairs_distances(g: UnderlyingGraph) -> MetricReport:
    """Level-synchronous BFS from every vertex at once."""
    n = len(g)
    dist = np.full((n, n), UNREACHABLE, dtype=np.int16)
    if n == 0:
        return MetricReport(dist, (), None, None, (), False)
    np.fill_diagonal(dist, 0)
    adj = g.adjacency.astype(np.float32)
    reached = np.eye(n, dtype=bool)
    frontier = reached.copy()
    level = 0
    while frontier.any():
        level += 1
        nxt = ((frontier.astype(np.float32) @ adj) > 0) & ~reached
        dist[nxt] = level
        reached |= nxt
        frontier = nxt
    ecc = dist.max(axis=1)
    radius = int(ecc.min())
    return MetricReport(
        dist=dist,
        eccentricities=tuple(int(e) for e in ecc),
        radius=radius,
        diameter=int(ecc.max()),
        center=tuple(int(i) for i in np.flatnonzero(ecc == radius)),
        connected=bool(reached.all()),
    )


def bfs_distances(g: UnderlyingGraph, source: int) -> list[int | None]:
    """Single-source BFS with a queue (kept independent of the matrix version)."""
    out: list[int | None] = [None] * len(g)
    out[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.neighbors(u):
            if out[v] is None:
                out[v] = out[u] + 1
                queue.append(int(v))
    return out


def shortest_path(g: UnderlyingGraph, source: int, target: int) -> list[int] | None:
    """One shortest path as vertex indices; the lowest-index parent wins ties."""
    parent = {source: source}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        if u == target:
            break
        for v in g.neighbors(u):
            v = int(v)
            if v not in parent:
                parent[v] = u
                queue.append(v)
    if target not in parent:
        return None
    path = [target]
    while path[-1] != source:
        path.append(parent[path[-1]])
    return path[::-1]


def is_connected_predicate(R: ProductRing) -> bool:
    """At least three maximal ideals and a field among the local factors."""
    return R.max_ideal_count >= 3 and R.n_fields >= 1
