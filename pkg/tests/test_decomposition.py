import random
from itertools import combinations

import networkx as nx
import pytest
from networkx.algorithms.approximation import treewidth_min_degree

from dvdom import Graph, InputError
from dvdom.decomposition import (
    TreeDecomposition,
    compute_modular_parse,
    join,
    leaf,
    min_degree_decomposition,
    to_nice,
    type_partition,
    union,
    validate_nice,
    validate_parse,
    validate_td,
)
from dvdom.decomposition.treedec import FORGET, INTRODUCE, JOIN, LEAF
from dvdom.mw import quotient_distances

from conftest import complete, make_graph, path, random_connected_graph, star, to_nx


def brute_modules(g: Graph):
    """All nontrivial modules by subset enumeration (tiny graphs only)."""
    found = []
    for k in range(2, g.n):
        for sub in combinations(range(g.n), k):
            s = set(sub)
            if all(len(g.adj[z] & s) in (0, len(s)) for z in range(g.n) if z not in s):
                found.append(s)
    return found


def random_graph(rng, n, p):
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


# ------------------------------------------------------------- parse trees

def test_single_vertex_is_leaf():
    pt = compute_modular_parse(Graph(1))
    assert pt.kind == "leaf" and pt.vertex == 0


def test_k22_two_modules_width_two():
    g = make_graph(4, [(1, 3), (1, 4), (2, 3), (2, 4)])
    pt = compute_modular_parse(g)
    h, mods = pt.as_substitution()
    assert h.n == 2 and h.m == 1
    assert sorted(sorted(m.vertices) for m in mods) == [[0, 1], [2, 3]]
    assert all(m.kind == "union" for m in mods)
    assert pt.width == 2
    assert validate_parse(g, pt)


def test_p4_is_prime():
    g = path(4)
    assert brute_modules(g) == []
    pt = compute_modular_parse(g)
    assert pt.kind == "subst" and pt.p == 4 and pt.width == 4
    assert all(c.kind == "leaf" for c in pt.children)
    assert pt.quotient == g  # children ordered by vertex id


def test_validate_parse_examples():
    assert validate_parse(Graph(1), leaf(0))
    assert validate_parse(complete(2), join(leaf(0), leaf(1)))
    assert not validate_parse(complete(2), union(leaf(0), leaf(1)))


def test_validate_parse_unknown_vertex():
    with pytest.raises(InputError):
        validate_parse(complete(2), join(leaf(0), leaf(7)))


def test_validate_parse_repeated_leaf():
    assert not validate_parse(Graph(2), union(leaf(0), leaf(0)))


def test_round_trip_random():
    rng = random.Random(1)
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 12), rng.choice((0.2, 0.4, 0.6, 0.8)))
        pt = compute_modular_parse(g)
        assert validate_parse(g, pt)


def test_children_are_modules():
    rng = random.Random(2)
    for _ in range(80):
        g = random_graph(rng, rng.randint(2, 10), 0.4)
        for node in compute_modular_parse(g).iter_nodes():
            for c in node.children:
                s = c.vertices
                assert all(len(g.adj[z] & s) in (0, len(s)) for z in range(g.n) if z not in s)


def test_prime_quotients_have_no_modules():
    rng = random.Random(3)
    checked = 0
    for _ in range(120):
        g = random_graph(rng, rng.randint(4, 9), 0.5)
        for node in compute_modular_parse(g).iter_nodes():
            if node.kind == "subst":
                assert brute_modules(node.quotient) == []
                checked += 1
    assert checked > 0


def test_close_vertices_inside_modules():
    # two vertices in a common proper module of a connected graph are within distance 2
    rng = random.Random(4)
    for _ in range(100):
        g = random_connected_graph(rng, rng.randint(2, 12), 0.25)
        root = compute_modular_parse(g)
        for node in root.iter_nodes():
            if node is root:
                continue
            for u, v in combinations(sorted(node.vertices), 2):
                assert g.distance(u, v) <= 2


def test_quotient_distance_identity():
    rng = random.Random(5)
    for _ in range(100):
        g = random_connected_graph(rng, rng.randint(2, 12), 0.25)
        pt = compute_modular_parse(g)
        h, mods = pt.as_substitution()
        dist = quotient_distances(h)
        for i, j in combinations(range(len(mods)), 2):
            for u in mods[i].vertices:
                for w in mods[j].vertices:
                    assert g.distance(u, w) == dist[i][j]


def test_union_join_binarised():
    g = Graph(4)  # four isolated vertices
    pt = compute_modular_parse(g)
    assert pt.kind == "union" and pt.p == 4
    h, mods = pt.as_substitution()
    assert h.n == 2 and h.m == 0
    assert mods[1].kind == "union" and len(mods[1].vertices) == 3


# --------------------------------------------------------- type partitions

def naive_same_type(g, u, v):
    return g.adj[u] - {v} == g.adj[v] - {u}


def test_type_partition_examples():
    tp = type_partition(complete(5))
    assert tp.nd == 1 and tp.kinds == ("clique",)
    tp = type_partition(star(4))
    assert tp.nd == 2 and tp.classes == ((0,), (1, 2, 3, 4))
    assert tp.kinds[1] == "independent"


def test_type_partition_is_coarsest_and_sound():
    rng = random.Random(6)
    for _ in range(150):
        g = random_graph(rng, rng.randint(1, 11), rng.choice((0.2, 0.5, 0.8)))
        tp = type_partition(g)
        cls = tp.class_of()
        assert sorted(cls) == list(range(g.n))
        for u, v in combinations(range(g.n), 2):
            assert (cls[u] == cls[v]) == naive_same_type(g, u, v)
        for c in tp.classes:
            s = set(c)
            assert all(len(g.adj[z] & s) in (0, len(s)) for z in range(g.n) if z not in s)


# ----------------------------------------------------- tree decompositions

def test_validate_td_examples():
    assert validate_td(path(3), TreeDecomposition.from_lists([{0, 1}, {1, 2}], [(0, 1)])) == (True, 1)
    assert validate_td(complete(3), TreeDecomposition.from_lists([{0, 1, 2}])) == (True, 2)
    ok, _ = validate_td(path(3), TreeDecomposition.from_lists([{0, 1}, {2}], [(0, 1)]))
    assert not ok


def test_validate_td_rejects_disconnected_occurrence():
    td = TreeDecomposition.from_lists([{0, 1}, {1, 2}, {0, 3}], [(0, 1), (1, 2)])
    g = make_graph(4, [(1, 2), (2, 3), (1, 4)])
    assert not validate_td(g, td)[0]


def test_validate_td_unknown_vertex():
    with pytest.raises(InputError):
        validate_td(path(3), TreeDecomposition.from_lists([{0, 1, 9}]))


def test_to_nice_single_bag():
    nice = to_nice(Graph(1), TreeDecomposition.from_lists([{0}]))
    assert nice.kind == [LEAF, INTRODUCE, FORGET]
    assert nice.bag == [(), (0,), ()]


def test_to_nice_invalid_td():
    with pytest.raises(InputError):
        to_nice(path(3), TreeDecomposition.from_lists([{0, 1}, {2}], [(0, 1)]))


def _forget_audit(nice, n):
    """Each vertex is forgotten exactly once and every introduce lies below its forget."""
    forgets = [i for i, k in enumerate(nice.kind) if k == FORGET]
    per_vertex = {}
    for i in forgets:
        per_vertex.setdefault(nice.vertex[i], []).append(i)
    assert sorted(per_vertex) == list(range(n))
    assert all(len(v) == 1 for v in per_vertex.values())
    parent = {c: i for i, ch in enumerate(nice.children) for c in ch}
    for i, k in enumerate(nice.kind):
        if k == INTRODUCE:
            x = i
            target = per_vertex[nice.vertex[i]][0]
            while x != target:
                assert nice.vertex[i] in nice.bag[x]
                x = parent[x]


def test_to_nice_p3():
    g = path(3)
    nice = to_nice(g, TreeDecomposition.from_lists([{0, 1}, {1, 2}], [(0, 1)]))
    assert validate_nice(g, nice) and nice.width == 1
    _forget_audit(nice, 3)


def _nx_td(g):
    _, tree = treewidth_min_degree(to_nx(g))
    bags = list(tree.nodes)
    index = {b: i for i, b in enumerate(bags)}
    return TreeDecomposition.from_lists(bags, [(index[a], index[b]) for a, b in tree.edges])


def test_to_nice_random_external_decompositions():
    rng = random.Random(8)
    for _ in range(80):
        g = random_connected_graph(rng, rng.randint(1, 12), 0.3)
        td = _nx_td(g)
        assert validate_td(g, td)[0]
        nice = to_nice(g, td)
        assert validate_nice(g, nice)
        assert nice.width <= td.width
        assert len(nice) <= 4 * (td.width + 2) * max(1, g.n) + 1
        _forget_audit(nice, g.n)
        for i, k in enumerate(nice.kind):
            assert k in (LEAF, INTRODUCE, FORGET, JOIN)
            if k == LEAF:
                assert nice.bag[i] == ()
        assert nice.bag[nice.root] == ()


def test_min_degree_heuristic_valid_and_forests_width_one():
    rng = random.Random(9)
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 12), 0.3)
        assert validate_td(g, min_degree_decomposition(g))[0]
    for _ in range(20):
        n = rng.randint(2, 40)
        tree = Graph(n, [(rng.randrange(v), v) for v in range(1, n)])
        td = min_degree_decomposition(tree)
        assert validate_td(tree, td) == (True, 1)


def test_min_degree_width_matches_networkx_on_cycles():
    for n in range(3, 10):
        g = Graph(n, [(i, (i + 1) % n) for i in range(n)])
        assert min_degree_decomposition(g).width == 2 == nx.algorithms.approximation.treewidth_min_degree(to_nx(g))[0]
