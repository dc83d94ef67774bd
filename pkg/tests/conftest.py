"""Shared instance builders and an independent networkx-based oracle."""
from __future__ import annotations

import random
from itertools import combinations

import networkx as nx
import pytest

from dvdom import DvdInstance, Graph


def make_graph(n, edges, one_based=True):
    shift = 1 if one_based else 0
    return Graph(n, [(u - shift, v - shift) for u, v in edges])


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph(n, combinations(range(n), 2))


def star(leaves):
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def nx_ball(h: nx.Graph, v, radius):
    dist = nx.single_source_shortest_path_length(h, v, cutoff=radius)
    return {u for u, du in dist.items() if u != v}


def naive_valid(g: Graph, t, d, s) -> bool:
    h = to_nx(g)
    s = set(s)
    return all(v in s or len(nx_ball(h, v, d[v]) & s) >= t[v] for v in range(g.n))


def naive_deficient(g: Graph, t, d, s) -> dict:
    h = to_nx(g)
    s = set(s)
    out = {}
    for v in range(g.n):
        if v not in s:
            have = len(nx_ball(h, v, d[v]) & s)
            if have < t[v]:
                out[v] = t[v] - have
    return out


def naive_optimum(g: Graph, t, d) -> int:
    """Smallest dominating set size by plain subset enumeration over networkx balls."""
    h = to_nx(g)
    balls = [nx_ball(h, v, d[v]) for v in range(g.n)]
    for k in range(g.n + 1):
        for combo in combinations(range(g.n), k):
            s = set(combo)
            if all(v in s or len(balls[v] & s) >= t[v] for v in range(g.n)):
                return k
    raise AssertionError("unreachable")


def random_connected_graph(rng: random.Random, n: int, p: float) -> Graph:
    """Random spanning tree plus independent extra edges."""
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    for u, v in combinations(range(n), 2):
        if rng.random() < p:
            edges.add((u, v))
    return Graph(n, sorted(edges))


def random_instance(rng: random.Random, n_max=12, t_max=3, d_max=3, connected=True,
                    unit_t=False, unit_d=False) -> DvdInstance:
    n = rng.randint(1, n_max)
    p = rng.choice((0.1, 0.25, 0.4, 0.6))
    if connected:
        g = random_connected_graph(rng, n, p)
    else:
        g = Graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])
    d = [1 if unit_d else rng.randint(1, d_max) for _ in range(n)]
    t = []
    for v in range(n):
        cap = len(g.ball(v, d[v]))
        t.append(min(1, cap) if unit_t else rng.randint(0, min(t_max, cap)))
    return DvdInstance(g, t, d)


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
