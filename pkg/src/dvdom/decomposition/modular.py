"""Modular parse trees and neighbourhood-diversity type partitions.

A parse tree expresses a graph through four operations: a single vertex
(``leaf``), disjoint union (``union``), complete join (``join``) and
substitution of the vertices of a quotient graph by modules (``subst``).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from ..exceptions import InputError
from ..graph import Graph

KINDS = ("leaf", "union", "join", "subst")


@dataclass(frozen=True, eq=False)
class ParseNode:
    kind: str
    children: tuple["ParseNode", ...] = ()
    vertex: int | None = None
    quotient: Graph | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown parse node kind {self.kind!r}")
        if self.kind == "leaf":
            if self.vertex is None or self.children:
                raise InputError("leaf nodes carry exactly one vertex and no children")
        elif len(self.children) < 2:
            raise InputError(f"{self.kind} node needs at least two children")
        if self.kind == "subst":
            if self.quotient is None or self.quotient.n != len(self.children):
                raise InputError("subst node needs a quotient graph with one vertex per child")

    @cached_property
    def vertices(self) -> frozenset[int]:
        if self.kind == "leaf":
            return frozenset((self.vertex,))
        return frozenset().union(*(c.vertices for c in self.children))

    @property
    def p(self) -> int:
        """Number of modules at this node (0 for a leaf)."""
        return len(self.children)

    @cached_property
    def width(self) -> int:
        """Largest quotient size in the subtree; unions and joins count as 2."""
        if self.kind == "leaf":
            return 0
        own = self.p if self.kind == "subst" else 2
        return max(own, *(c.width for c in self.children))

    def quotient_graph(self) -> Graph:
        """Quotient on the (unbinarised) children."""
        if self.kind == "subst":
            return self.quotient
        if self.kind == "union":
            return Graph(self.p)
        if self.kind == "join":
            return Graph(self.p, combinations(range(self.p), 2))
        raise InputError("a leaf has no quotient")

    def as_substitution(self) -> tuple[Graph, tuple["ParseNode", ...]]:
        """``(H, modules)`` with unions and joins split into binary steps.

        A union or join over more than two children becomes its first child
        plus a synthetic node over the remaining ones, so ``H`` is always
        ``K_2`` or its complement for those kinds.
        """
        if self.kind == "subst":
            return self.quotient, self.children
        if self.kind == "leaf":
            raise InputError("a leaf has no quotient")
        if self.p == 2:
            rest = self.children[1]
        else:
            rest = ParseNode(self.kind, self.children[1:])
        h = Graph(2, [(0, 1)] if self.kind == "join" else [])
        return h, (self.children[0], rest)

    def expand(self) -> tuple[frozenset[int], set[tuple[int, int]]]:
        """Vertex and edge sets of the graph this node denotes."""
        if self.kind == "leaf":
            return self.vertices, set()
        h = self.quotient_graph()
        edges: set[tuple[int, int]] = set()
        seen: set[int] = set()
        for c in self.children:
            vs, es = c.expand()
            if vs & seen:
                raise InputError(f"vertex {min(vs & seen)} appears in more than one module")
            seen |= vs
            edges |= es
        for i, j in h.edges:
            for u in self.children[i].vertices:
                for w in self.children[j].vertices:
                    edges.add((u, w) if u < w else (w, u))
        return frozenset(seen), edges

    def iter_nodes(self):
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def __repr__(self):
        if self.kind == "leaf":
            return f"Leaf({self.vertex})"
        return f"{self.kind.capitalize()}({', '.join(map(repr, self.children))})"


def leaf(v: int) -> ParseNode:
    return ParseNode("leaf", vertex=v)


def union(*children: ParseNode) -> ParseNode:
    return ParseNode("union", tuple(children))


def join(*children: ParseNode) -> ParseNode:
    return ParseNode("join", tuple(children))


def subst(quotient: Graph, *children: ParseNode) -> ParseNode:
    return ParseNode("subst", tuple(children), quotient=quotient)


def is_module(g: Graph, members) -> bool:
    """Every vertex outside ``members`` sees all of it or none of it."""
    members = set(members)
    for z in range(g.n):
        if z in members:
            continue
        hit = len(g.adj[z] & members)
        if 0 < hit < len(members):
            return False
    return True


def _module_closure(g: Graph, seed: set[int], universe: frozenset[int]) -> set[int]:
    """Smallest module of ``G[universe]`` containing ``seed``."""
    closed = set(seed)
    changed = True
    while changed:
        changed = False
        for z in sorted(universe - closed):
            hit = len(g.adj[z] & closed)
            if 0 < hit < len(closed):
                closed.add(z)
                changed = True
    return closed


def _split(adjacent, universe: frozenset[int]) -> list[list[int]]:
    """Components of the graph on ``universe`` whose neighbour function is ``adjacent``."""
    left = set(universe)
    parts = []
    while left:
        s = min(left)
        left.discard(s)
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            nxt = adjacent(u) & left
            left -= nxt
            comp.extend(nxt)
            stack.extend(nxt)
        parts.append(sorted(comp))
    parts.sort(key=lambda c: c[0])
    return parts


def compute_modular_parse(g: Graph) -> ParseNode:
    """Modular decomposition of ``g`` as a parse tree.

    Parallel and series nodes become ``union`` / ``join`` over all
    components / co-components; prime nodes become ``subst`` over their
    maximal strong modules.  Children are ordered by smallest vertex.
    """
    if g.n == 0:
        raise InputError("cannot decompose the empty graph")
    return _decompose(g, frozenset(range(g.n)))


def _decompose(g: Graph, universe: frozenset[int]) -> ParseNode:
    if len(universe) == 1:
        return leaf(next(iter(universe)))
    comps = _split(lambda u: g.adj[u] & universe, universe)
    if len(comps) > 1:
        return union(*(_decompose(g, frozenset(c)) for c in comps))
    cocomps = _split(lambda u: (universe - g.adj[u]) - {u}, universe)
    if len(cocomps) > 1:
        return join(*(_decompose(g, frozenset(c)) for c in cocomps))

    # prime: the maximal proper modules partition the universe
    classes: list[list[int]] = []
    assigned: set[int] = set()
    for v in sorted(universe):
        if v in assigned:
            continue
        block = {v}
        for u in sorted(universe - block - assigned):
            if u in block:
                continue
            closure = _module_closure(g, {v, u}, universe)
            if len(closure) < len(universe):
                block |= closure
        assigned |= block
        classes.append(sorted(block))
    classes.sort(key=lambda c: c[0])
    reps = [c[0] for c in classes]
    h_edges = [(i, j) for i, j in combinations(range(len(reps)), 2) if g.has_edge(reps[i], reps[j])]
    h = Graph(len(reps), h_edges)
    return subst(h, *(_decompose(g, frozenset(c)) for c in classes))


def validate_parse(g: Graph, pt: ParseNode) -> bool:
    """True iff expanding ``pt`` reproduces ``g`` exactly."""
    for node in pt.iter_nodes():
        if node.kind == "leaf" and not (isinstance(node.vertex, int) and 0 <= node.vertex < g.n):
            raise InputError(f"parse tree references unknown vertex {node.vertex!r}")
    try:
        vertices, edges = pt.expand()
    except InputError:
        return False
    leaves = [n.vertex for n in pt.iter_nodes() if n.kind == "leaf"]
    if len(leaves) != len(set(leaves)) or vertices != frozenset(range(g.n)):
        return False
    return edges == set(g.edges)


@dataclass(frozen=True)
class TypePartition:
    """Coarsest partition into same-type classes.

    ``kinds[i]`` is ``"clique"`` when class ``i`` has at least two mutually
    adjacent members and ``"independent"`` otherwise.
    """

    classes: tuple[tuple[int, ...], ...]
    kinds: tuple[str, ...]

    @property
    def nd(self) -> int:
        return len(self.classes)

    def class_of(self) -> dict[int, int]:
        return {v: i for i, c in enumerate(self.classes) for v in c}


def type_partition(g: Graph) -> TypePartition:
    """Group vertices with equal open (false twins) or closed (true twins) neighbourhoods.

    Being of the same type is an equivalence relation, so grouping by the two
    neighbourhood signatures yields the coarsest partition directly.
    """
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for key in (lambda v: g.adj[v], lambda v: g.adj[v] | {v}):
        first: dict[frozenset, int] = {}
        for v in range(g.n):
            sig = key(v)
            if sig in first:
                a, b = find(first[sig]), find(v)
                if a != b:
                    parent[max(a, b)] = min(a, b)
            else:
                first[sig] = v
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    classes = sorted((tuple(c) for c in groups.values()), key=lambda c: c[0])
    kinds = tuple("clique" if len(c) > 1 and g.has_edge(c[0], c[1]) else "independent" for c in classes)
    return TypePartition(tuple(classes), kinds)
