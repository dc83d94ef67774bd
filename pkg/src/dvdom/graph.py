"""Graphs, distances, DVD instances and solution verification.

Vertices are the integers ``0 .. n-1`` inside the library.  File formats and
the command line use ``1 .. n``; translation happens in :mod:`dvdom.io`.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .exceptions import InputError

INF = float("inf")

#: graphs up to this size keep an all-pairs distance table once it is asked for
APSP_CACHE_LIMIT = 2048


class Graph:
    """Undirected simple graph on vertices ``0 .. n-1``.

    Immutable after construction.  Distances are computed by BFS on demand;
    for ``n <= cache_limit`` every BFS row is memoised.
    """

    __slots__ = ("n", "adj", "_edges", "_dist", "_cache_limit")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), cache_limit: int = APSP_CACHE_LIMIT):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        adj: list[set[int]] = [set() for _ in range(n)]
        seen = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) references a vertex outside 0..{n - 1}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise InputError(f"duplicate edge {key}")
            seen.add(key)
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adj = tuple(frozenset(a) for a in adj)
        self._edges = tuple(sorted(seen))
        self._dist: dict[int, list[float]] = {}
        self._cache_limit = cache_limit

    @classmethod
    def from_adjacency(cls, adj: Sequence[Iterable[int]]) -> "Graph":
        edges = {(min(u, v), max(u, v)) for u, nb in enumerate(adj) for v in nb}
        return cls(len(adj), sorted(edges))

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self):
        return hash((self.n, self._edges))

    def neighbors(self, v: int) -> frozenset[int]:
        self._check_vertex(v)
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def _check_vertex(self, v):
        if not (isinstance(v, (int,)) and 0 <= v < self.n):
            raise InputError(f"unknown vertex {v!r} (graph has vertices 0..{self.n - 1})")

    def distances(self, source: int) -> list[float]:
        """Hop distances from ``source``; unreachable vertices get ``inf``."""
        self._check_vertex(source)
        row = self._dist.get(source)
        if row is not None:
            return row
        row = bfs_distances(self, source)
        if self.n <= self._cache_limit:
            self._dist[source] = row
        return row

    def distance(self, u: int, v: int) -> float:
        return self.distances(u)[v]

    def ball(self, v: int, radius: int) -> frozenset[int]:
        return ball(self, v, radius)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``vertices``.

        Returns the subgraph (relabelled ``0..k-1`` in sorted order) and the
        list mapping new ids back to the original ones.
        """
        verts = sorted(set(vertices))
        index = {v: i for i, v in enumerate(verts)}
        edges = [(index[u], index[v]) for u, v in self._edges if u in index and v in index]
        return Graph(len(verts), edges, cache_limit=self._cache_limit), verts

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        comp = [-1] * self.n
        out = []
        for s in range(self.n):
            if comp[s] >= 0:
                continue
            comp[s] = len(out)
            members = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if comp[w] < 0:
                        comp[w] = comp[s]
                        members.append(w)
                        queue.append(w)
            out.append(sorted(members))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def complement(self) -> "Graph":
        edges = [(u, v) for u in range(self.n) for v in range(u + 1, self.n) if v not in self.adj[u]]
        return Graph(self.n, edges)

    def diameter(self) -> float:
        if self.n == 0:
            return 0
        return max(max(self.distances(v)) for v in range(self.n))


def bfs_distances(g: Graph, source: int, limit: int | None = None) -> list[float]:
    """Shortest-path hop counts from ``source``.

    With ``limit`` set, exploration stops at that depth and farther vertices
    are reported as ``inf``.
    """
    g._check_vertex(source)
    dist: list[float] = [INF] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        if limit is not None and du >= limit:
            continue
        for w in g.adj[u]:
            if dist[w] == INF:
                dist[w] = du + 1
                queue.append(w)
    return dist


def ball(g: Graph, v: int, radius: int) -> frozenset[int]:
    """Vertices other than ``v`` within ``radius`` hops of ``v``."""
    if radius < 1:
        raise InputError(f"radius must be a positive integer, got {radius}")
    g._check_vertex(v)
    if radius == 1:
        return g.adj[v]
    row = g._dist.get(v)
    if row is None:
        row = bfs_distances(g, v, limit=radius) if g.n > g._cache_limit else g.distances(v)
    return frozenset(u for u, du in enumerate(row) if 0 < du <= radius)


class DvdInstance:
    """A graph with per-vertex demands ``t`` and radii ``d``.

    Rejects instances where some ``t[v]`` exceeds the size of the radius-``d[v]``
    ball around ``v`` or where some radius is below 1.
    """

    def __init__(self, graph: Graph, t: Sequence[int] | int = 1, d: Sequence[int] | int = 1,
                 budget: int | None = None):
        n = graph.n
        t = [t] * n if isinstance(t, int) else [int(x) for x in t]
        d = [d] * n if isinstance(d, int) else [int(x) for x in d]
        if len(t) != n or len(d) != n:
            raise InputError(f"demand/radius vectors must have length {n}")
        for v in range(n):
            if d[v] < 1:
                raise InputError(f"radius of vertex {v} must be >= 1, got {d[v]}")
            if t[v] < 0:
                raise InputError(f"demand of vertex {v} must be >= 0, got {t[v]}")
        self.graph = graph
        self.t = tuple(t)
        self.d = tuple(d)
        self.budget = budget
        self._balls: dict[int, frozenset[int]] = {}
        for v in range(n):
            # cheap bound first: degree already covers the demand
            if t[v] <= graph.degree(v):
                continue
            size = len(self.ball(v))
            if t[v] > size:
                raise InputError(
                    f"vertex {v} demands {t[v]} dominators but only {size} vertices lie within radius {d[v]}")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def tau(self) -> int:
        return max(self.t, default=0)

    @property
    def delta(self) -> int:
        return max(self.d, default=1)

    def ball(self, v: int) -> frozenset[int]:
        """Radius-``d[v]`` neighbourhood of ``v`` (memoised)."""
        b = self._balls.get(v)
        if b is None:
            b = ball(self.graph, v, self.d[v])
            self._balls[v] = b
        return b

    def is_vd(self) -> bool:
        """All radii equal to one (Vector Domination)."""
        return all(x == 1 for x in self.d)

    def is_rd(self) -> bool:
        """Unit demand on every non-isolated vertex (R-Domination)."""
        return all(self.t[v] == 1 or (self.t[v] == 0 and self.graph.degree(v) == 0) for v in range(self.n))

    def restrict(self, vertices: Iterable[int]) -> tuple["DvdInstance", list[int]]:
        """Sub-instance induced by a union of connected components.

        Only meaningful for component unions: balls are recomputed inside the
        induced subgraph.
        """
        sub, back = self.graph.induced(vertices)
        inst = DvdInstance(sub, [self.t[v] for v in back], [self.d[v] for v in back])
        return inst, back

    def __repr__(self):
        return f"DvdInstance(n={self.n}, m={self.graph.m}, tau={self.tau}, delta={self.delta})"


@dataclass(frozen=True)
class Solution:
    """A selected vertex set plus what produced it."""

    selected: frozenset
    algorithm: str = ""
    optimal: bool = False
    width: int | None = None
    info: Mapping = field(default_factory=dict, compare=False)

    @property
    def size(self) -> int:
        return len(self.selected)

    def sorted(self) -> list[int]:
        return sorted(self.selected)


@dataclass(frozen=True)
class DominationReport:
    """Result of :func:`is_dvd_set`; truthy when the set dominates."""

    valid: bool
    deficiency: Mapping[int, int]

    def __bool__(self):
        return self.valid


def is_dvd_set(inst: DvdInstance, s: Iterable[int]) -> DominationReport:
    """Check that every vertex outside ``s`` has ``t[v]`` members of ``s`` within ``d[v]``.

    The report maps each violating vertex to its shortfall.
    """
    chosen = set(s)
    for v in chosen:
        inst.graph._check_vertex(v)
    deficiency = {}
    for v in range(inst.n):
        if v in chosen or inst.t[v] == 0:
            continue
        have = len(inst.ball(v) & chosen)
        if have < inst.t[v]:
            deficiency[v] = inst.t[v] - have
    return DominationReport(not deficiency, deficiency)


def solve_by_component(inst: DvdInstance, solve_one) -> tuple[set[int], list]:
    """Run ``solve_one(sub_instance)`` per connected component and merge.

    ``solve_one`` returns a :class:`Solution` on the relabelled component.
    Returns the merged vertex set (original ids) and the per-component solutions.
    """
    parts = inst.graph.components()
    if len(parts) == 1:
        sol = solve_one(inst)
        return set(sol.selected), [sol]
    merged: set[int] = set()
    sols = []
    for comp in parts:
        sub, back = inst.restrict(comp)
        sol = solve_one(sub)
        merged.update(back[v] for v in sol.selected)
        sols.append(sol)
    return merged, sols
