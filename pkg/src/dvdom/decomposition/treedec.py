"""Tree decompositions, nice tree decompositions and a min-degree heuristic."""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

from ..exceptions import InputError
from ..graph import Graph


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags plus the tree edges between bag indices."""

    bags: tuple[frozenset[int], ...]
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_lists(cls, bags: Sequence, edges: Sequence = ()) -> "TreeDecomposition":
        return cls(tuple(frozenset(b) for b in bags), tuple((int(i), int(j)) for i, j in edges))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


def _tree_adjacency(n_bags, edges):
    adj = [[] for _ in range(n_bags)]
    for i, j in edges:
        if not (0 <= i < n_bags and 0 <= j < n_bags) or i == j:
            raise InputError(f"tree edge ({i}, {j}) does not join two distinct bags")
        adj[i].append(j)
        adj[j].append(i)
    return adj


def _is_tree(n_bags, edges) -> bool:
    if n_bags == 0:
        return False
    if len(edges) != n_bags - 1:
        return False
    adj = _tree_adjacency(n_bags, edges)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n_bags


def _subtrees_connected(n_bags, edges, bags, n) -> bool:
    adj = _tree_adjacency(n_bags, edges)
    holders: list[list[int]] = [[] for _ in range(n)]
    for i, bag in enumerate(bags):
        for v in bag:
            holders[v].append(i)
    for v in range(n):
        hs = holders[v]
        if not hs:
            continue
        allowed = set(hs)
        seen = {hs[0]}
        stack = [hs[0]]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in allowed and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(allowed):
            return False
    return True


def validate_td(g: Graph, td: TreeDecomposition) -> tuple[bool, int]:
    """Check coverage, edge containment and connectivity; return ``(ok, width)``."""
    for bag in td.bags:
        for v in bag:
            if not (isinstance(v, int) and 0 <= v < g.n):
                raise InputError(f"bag references unknown vertex {v!r}")
    width = td.width
    if g.n == 0:
        return True, width
    if not _is_tree(len(td.bags), td.edges):
        return False, width
    if frozenset().union(*td.bags) != frozenset(range(g.n)):
        return False, width
    holders: list[set[int]] = [set() for _ in range(g.n)]
    for i, bag in enumerate(td.bags):
        for v in bag:
            holders[v].add(i)
    for u, v in g.edges:
        if not holders[u] & holders[v]:
            return False, width
    return _subtrees_connected(len(td.bags), td.edges, td.bags, g.n), width


LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


class NiceTreeDecomposition:
    """Rooted nice tree decomposition.

    Nodes are stored children-first: every node's index is larger than the
    indices of its children and the root is the last node.  ``vertex[i]`` is
    the introduced/forgotten vertex for those kinds and ``None`` otherwise.
    """

    def __init__(self):
        self.kind: list[str] = []
        self.bag: list[tuple[int, ...]] = []
        self.vertex: list[int | None] = []
        self.children: list[tuple[int, ...]] = []

    def _add(self, kind, bag, vertex=None, children=()):
        self.kind.append(kind)
        self.bag.append(tuple(sorted(bag)))
        self.vertex.append(vertex)
        self.children.append(tuple(children))
        return len(self.kind) - 1

    def __len__(self):
        return len(self.kind)

    @property
    def root(self) -> int:
        return len(self.kind) - 1

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bag), default=0) - 1

    def as_tree_decomposition(self) -> TreeDecomposition:
        edges = [(c, i) for i, ch in enumerate(self.children) for c in ch]
        return TreeDecomposition(tuple(frozenset(b) for b in self.bag), tuple(edges))

    def __repr__(self):
        return f"NiceTreeDecomposition(nodes={len(self)}, width={self.width})"


def to_nice(g: Graph, td: TreeDecomposition, root: int = 0) -> NiceTreeDecomposition:
    """Convert a valid tree decomposition into nice form of the same width.

    Each tree edge becomes a forget chain followed by an introduce chain,
    multiple children are merged by binary joins over copies of the parent
    bag, leaves start from an empty bag and the root is forgotten down to an
    empty bag.  Vertices are introduced/forgotten in increasing id order.
    """
    ok, _ = validate_td(g, td)
    if not ok:
        raise InputError("not a valid tree decomposition of this graph")
    nice = NiceTreeDecomposition()
    if g.n == 0:
        nice._add(LEAF, ())
        return nice
    adj = _tree_adjacency(len(td.bags), td.edges)
    parent = {root: None}
    order = []
    stack = [root]
    while stack:
        x = stack.pop()
        order.append(x)
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                stack.append(y)
    kids: dict[int, list[int]] = {x: [] for x in order}
    for x in order:
        if parent[x] is not None:
            kids[parent[x]].append(x)

    top: dict[int, int] = {}
    for x in reversed(order):
        bag_x = td.bags[x]
        if not kids[x]:
            cur = nice._add(LEAF, ())
            current = set()
            for v in sorted(bag_x):
                current.add(v)
                cur = nice._add(INTRODUCE, current, v, (cur,))
            top[x] = cur
            continue
        branches = []
        for c in sorted(kids[x]):
            cur = top.pop(c)
            current = set(td.bags[c])
            for v in sorted(current - bag_x):
                current.discard(v)
                cur = nice._add(FORGET, current, v, (cur,))
            for v in sorted(bag_x - current):
                current.add(v)
                cur = nice._add(INTRODUCE, current, v, (cur,))
            branches.append(cur)
        cur = branches[0]
        for b in branches[1:]:
            cur = nice._add(JOIN, bag_x, None, (cur, b))
        top[x] = cur
    cur = top[root]
    current = set(td.bags[root])
    for v in sorted(current):
        current.discard(v)
        cur = nice._add(FORGET, current, v, (cur,))
    return nice


def validate_nice(g: Graph, ntd: NiceTreeDecomposition) -> bool:
    """Tree-decomposition conditions plus the leaf/introduce/forget/join shape rules."""
    if len(ntd) == 0:
        return False
    ok, _ = validate_td(g, ntd.as_tree_decomposition())
    if not ok:
        return False
    if ntd.bag[ntd.root]:
        return False
    for i in range(len(ntd)):
        kind, bag, ch, v = ntd.kind[i], set(ntd.bag[i]), ntd.children[i], ntd.vertex[i]
        if any(c >= i for c in ch):
            return False
        if kind == LEAF:
            if ch or bag:
                return False
        elif kind == INTRODUCE:
            if len(ch) != 1 or v in ntd.bag[ch[0]] or bag != set(ntd.bag[ch[0]]) | {v}:
                return False
        elif kind == FORGET:
            if len(ch) != 1 or v in bag or set(ntd.bag[ch[0]]) != bag | {v}:
                return False
        elif kind == JOIN:
            if len(ch) != 2 or any(set(ntd.bag[c]) != bag for c in ch):
                return False
        else:
            return False
    return True


def min_degree_decomposition(g: Graph) -> TreeDecomposition:
    """Tree decomposition from a greedy min-degree elimination order.

    Ties go to the smallest vertex id.  Not optimal in general; exact on
    forests (width 1).
    """
    n = g.n
    if n == 0:
        return TreeDecomposition((frozenset(),), ())
    adj = [set(a) for a in g.adj]
    heap = [(len(adj[v]), v) for v in range(n)]
    heapq.heapify(heap)
    position = [-1] * n
    bags = []
    nbrs_at_elim = []
    while heap:
        deg, v = heapq.heappop(heap)
        if position[v] >= 0 or deg != len(adj[v]):
            continue
        position[v] = len(bags)
        nb = adj[v]
        bags.append(frozenset(nb | {v}))
        nbrs_at_elim.append(tuple(nb))
        for u in nb:
            adj[u].discard(v)
        for u in nb:
            for w in nb:
                if u < w and w not in adj[u]:
                    adj[u].add(w)
                    adj[w].add(u)
        for u in nb:
            heapq.heappush(heap, (len(adj[u]), u))
        adj[v] = set()
    edges = []
    roots = []
    for i, nb in enumerate(nbrs_at_elim):
        if nb:
            edges.append((i, min(position[u] for u in nb)))
        else:
            roots.append(i)
    # one root per component; chain them so the result is a single tree
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return TreeDecomposition(tuple(bags), tuple(edges))
