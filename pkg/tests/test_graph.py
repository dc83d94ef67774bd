import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dvdom import DvdInstance, Graph, InputError, ball, bfs_distances, is_dvd_set
from dvdom.graph import INF

from conftest import complete, cycle, make_graph, naive_deficient, naive_valid, path, random_instance, star


def test_graph_rejects_self_loops_and_duplicates():
    with pytest.raises(InputError):
        Graph(3, [(1, 1)])
    with pytest.raises(InputError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(InputError):
        Graph(3, [(0, 3)])


def test_adjacency_symmetric():
    g = make_graph(4, [(1, 2), (2, 3), (3, 4)])
    for u in range(g.n):
        for v in g.adj[u]:
            assert u in g.adj[v]


def test_bfs_path():
    assert bfs_distances(path(3), 0) == [0, 1, 2]


def test_bfs_single_vertex():
    assert bfs_distances(Graph(1), 0) == [0]


def test_bfs_disconnected_is_infinite():
    g = make_graph(4, [(1, 2), (3, 4)])
    dist = bfs_distances(g, 0)
    assert dist[1] == 1 and dist[2] == INF and dist[3] == INF


def test_bfs_unknown_vertex():
    with pytest.raises(InputError):
        bfs_distances(path(3), 3)


def test_ball_examples():
    assert ball(path(4), 0, 2) == {1, 2}
    assert ball(complete(4), 0, 1) == {1, 2, 3}
    b = ball(cycle(6), 0, 2)
    assert b == {1, 2, 4, 5} and len(b) == 4


def test_ball_radius_one_is_neighbourhood():
    g = make_graph(5, [(1, 2), (1, 3), (3, 4), (4, 5)])
    for v in range(g.n):
        assert ball(g, v, 1) == g.neighbors(v)


def test_ball_radius_zero_rejected():
    with pytest.raises(InputError):
        ball(path(3), 0, 0)


def test_ball_at_diameter_is_everything_else(rng):
    from conftest import random_connected_graph
    for _ in range(30):
        g = random_connected_graph(rng, rng.randint(1, 12), 0.2)
        diam = max(1, int(g.diameter()))
        for v in range(g.n):
            assert ball(g, v, diam) == frozenset(range(g.n)) - {v}


def test_cached_and_uncached_distances_agree(rng):
    from conftest import random_connected_graph
    g = random_connected_graph(rng, 15, 0.1)
    small = Graph(g.n, g.edges, cache_limit=0)
    for v in range(g.n):
        for r in (1, 2, 3):
            assert ball(g, v, r) == ball(small, v, r)


def test_instance_rejects_infeasible_demand():
    with pytest.raises(InputError):
        DvdInstance(path(3), t=[2, 1, 1])
    with pytest.raises(InputError):
        DvdInstance(path(3), t=1, d=[1, 0, 1])
    with pytest.raises(InputError):
        DvdInstance(path(3), t=[-1, 1, 1])
    # radius 2 makes two dominators reachable from the end of the path
    DvdInstance(path(3), t=[2, 1, 1], d=2)


def test_tau_delta():
    inst = DvdInstance(cycle(5), t=[0, 1, 2, 1, 0], d=[1, 3, 2, 1, 1])
    assert inst.tau == 2 and inst.delta == 3


def test_is_dvd_set_examples():
    assert is_dvd_set(DvdInstance(star(3)), {0})
    assert is_dvd_set(DvdInstance(path(3), d=2), {0})
    rep = is_dvd_set(DvdInstance(cycle(4), t=2), {0})
    assert not rep.valid
    # independent check: neighbours short by one, the opposite vertex by two
    assert rep.deficiency == naive_deficient(cycle(4), [2] * 4, [1] * 4, {0}) == {1: 1, 2: 2, 3: 1}


def test_full_set_always_valid(rng):
    for _ in range(50):
        inst = random_instance(rng)
        assert is_dvd_set(inst, range(inst.n))


def test_unknown_vertex_in_set():
    with pytest.raises(InputError):
        is_dvd_set(DvdInstance(path(3)), {5})


def test_matches_naive_predicate(rng):
    for _ in range(100):
        inst = random_instance(rng, connected=False)
        s = {v for v in range(inst.n) if rng.random() < 0.4}
        rep = is_dvd_set(inst, s)
        assert rep.valid == naive_valid(inst.graph, inst.t, inst.d, s)
        assert dict(rep.deficiency) == naive_deficient(inst.graph, inst.t, inst.d, s)


def test_dominating_set_specialisation():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 10)
        g = Graph(n, [e for e in combinations(range(n), 2) if rng.random() < 0.3])
        t = [1 if g.degree(v) else 0 for v in range(n)]
        inst = DvdInstance(g, t, 1)
        s = {v for v in range(n) if rng.random() < 0.5}
        classic = all(v in s or (g.adj[v] & s) or g.degree(v) == 0 for v in range(n))
        assert bool(is_dvd_set(inst, s)) == bool(classic)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_monotone_under_supersets(seed):
    rng = random.Random(seed)
    inst = random_instance(rng, n_max=9)
    s = {v for v in range(inst.n) if rng.random() < 0.5}
    if is_dvd_set(inst, s):
        for u in range(inst.n):
            assert is_dvd_set(inst, s | {u})


def test_components_sorted():
    g = make_graph(5, [(4, 5), (1, 3)])
    assert g.components() == [[0, 2], [1], [3, 4]]
