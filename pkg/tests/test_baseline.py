import math
import random

import pytest

from dvdom import DvdInstance, Graph, RefusalError, brute_force_min_dvd, greedy_dvd, is_dvd_set
from dvdom.baseline import brute_force_decide, coverage_potential, greedy_ratio_bound

from conftest import complete, cycle, naive_optimum, path, random_instance, star


def test_brute_examples():
    sol = brute_force_min_dvd(DvdInstance(Graph(1), t=0))
    assert sol.selected == frozenset() and sol.optimal
    assert brute_force_min_dvd(DvdInstance(cycle(4))).size == 2 == naive_optimum(cycle(4), [1] * 4, [1] * 4)
    sol = brute_force_min_dvd(DvdInstance(path(5), d=2))
    assert sol.selected == {2}


def test_brute_lexicographic_tie_break():
    # every single vertex of K3 dominates; the smallest id wins
    assert brute_force_min_dvd(DvdInstance(complete(3))).selected == {0}


def test_brute_refuses_large_pool():
    inst = DvdInstance(path(30))
    with pytest.raises(RefusalError):
        brute_force_min_dvd(inst)
    assert brute_force_min_dvd(DvdInstance(path(25)), force=True).size == 9


def test_brute_size_cap():
    inst = DvdInstance(cycle(6))
    assert brute_force_min_dvd(inst, size_cap=1) is None
    assert brute_force_min_dvd(inst, size_cap=2).size == 2


def test_brute_matches_independent_oracle():
    rng = random.Random(21)
    for _ in range(120):
        inst = random_instance(rng, n_max=9, connected=False)
        sol = brute_force_min_dvd(inst)
        assert is_dvd_set(inst, sol.selected)
        assert sol.size == naive_optimum(inst.graph, inst.t, inst.d)


def test_decide_exact_size():
    inst = DvdInstance(cycle(6), d=1)
    assert brute_force_decide(inst, 1) is None
    s = brute_force_decide(inst, 2)
    assert s is not None and len(s) == 2 and is_dvd_set(inst, s)
    assert brute_force_decide(inst, 7) is None
    assert brute_force_decide(inst, 2, candidates=[0, 1, 2]) is None


def test_greedy_examples():
    assert greedy_dvd(DvdInstance(star(5))).selected == {0}
    inst = DvdInstance(complete(6), t=2)
    assert greedy_dvd(inst).size == 2 == brute_force_min_dvd(inst).size


def test_greedy_ratio_and_validity():
    rng = random.Random(22)
    for _ in range(100):
        inst = random_instance(rng, n_max=14, connected=False)
        g = greedy_dvd(inst)
        assert is_dvd_set(inst, g.selected)
        opt = brute_force_min_dvd(inst).size
        assert g.size <= greedy_ratio_bound(inst.n) * opt + 1e-9
        if opt == 0:
            assert g.size == 0


def test_greedy_potential_strictly_increases():
    rng = random.Random(23)
    for _ in range(60):
        inst = random_instance(rng, n_max=14)
        trace = []
        sol = greedy_dvd(inst, trace=trace)
        assert len(trace) == sol.size
        assert all(b > a for a, b in zip([0] + trace, trace)) or sum(inst.t) == 0
        assert (trace[-1] if trace else 0) == sum(inst.t)


def test_potential_characterises_validity():
    rng = random.Random(24)
    for _ in range(80):
        inst = random_instance(rng, n_max=10)
        s = {v for v in range(inst.n) if rng.random() < 0.4}
        assert (coverage_potential(inst, s) == sum(inst.t)) == bool(is_dvd_set(inst, s))


def test_potential_monotone_submodular():
    rng = random.Random(25)
    for _ in range(60):
        inst = random_instance(rng, n_max=9)
        a = {v for v in range(inst.n) if rng.random() < 0.3}
        b = a | {v for v in range(inst.n) if rng.random() < 0.3}
        f = lambda s: coverage_potential(inst, s)
        assert f(a) <= f(b)
        for u in set(range(inst.n)) - b:
            assert f(a | {u}) - f(a) >= f(b | {u}) - f(b)


def test_ratio_bound_value():
    assert greedy_ratio_bound(10) == pytest.approx(math.log(10) + 2)
