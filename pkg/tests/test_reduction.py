from dataclasses import replace
from itertools import combinations
from math import comb

import pytest

from dvdom import InputError
from dvdom.baseline import brute_force_decide
from dvdom.decomposition import type_partition
from dvdom.reduction import (
    MqInstance,
    budget,
    decide_by_gadgets,
    expected_nd,
    expected_order,
    gadget_audit,
    mq_random_instance,
    mq_to_vd,
    part_names,
)


def test_small_instances_have_forced_counts():
    mq = mq_random_instance(2, 1, 1, seed=3)
    g = mq.graph()
    assert g.n == 4 and g.m == 2
    mq = mq_random_instance(3, 1, 1, seed=3)
    assert mq.graph().n == 6 and mq.graph().m == 6


def test_regularity_invariants():
    for q, r, s in [(2, 1, 1), (3, 1, 2), (3, 2, 2), (4, 2, 3)]:
        for seed in range(3):
            mq = mq_random_instance(q, r, s, seed=seed)
            g = mq.graph()
            for u, v in g.edges:
                assert mq.color(u) != mq.color(v)
            for c in range(q):
                assert sum(1 for v in range(g.n) if mq.color(v) == c) == r + 1
            for c, d in combinations(range(q), 2):
                crossing = [e for e in g.edges if {mq.color(e[0]), mq.color(e[1])} == {c, d}]
                assert len(crossing) == s + 1
            assert mq.irrelevant_vertices() == []


def test_planted_mode_has_clique():
    for seed in range(5):
        mq = mq_random_instance(4, 2, 2, seed=seed, mode="planted")
        clique = mq.find_multicolored_clique()
        assert clique is not None
        g = mq.graph()
        ids = [mq.vertex(c, i) for c, i in enumerate(clique)]
        assert all(g.has_edge(u, v) for u, v in combinations(ids, 2))


def test_avoid_mode_has_no_clique():
    mq = mq_random_instance(3, 1, 1, seed=0, mode="avoid")
    assert mq.find_multicolored_clique() is None


def test_two_colours_always_contain_a_clique():
    for seed in range(10):
        assert mq_random_instance(2, 2, 3, seed=seed).find_multicolored_clique() is not None
    with pytest.raises(InputError):
        mq_random_instance(2, 1, 1, seed=0, mode="avoid", max_tries=20)


def test_deterministic_by_seed():
    assert mq_random_instance(3, 2, 2, seed=9) == mq_random_instance(3, 2, 2, seed=9)


def test_parameter_errors():
    with pytest.raises(InputError):
        mq_random_instance(1, 1, 1)
    with pytest.raises(InputError):
        mq_random_instance(2, 0, 1)
    with pytest.raises(InputError):
        mq_random_instance(2, 1, 4)  # 5 edges cannot fit between two 2-vertex classes
    with pytest.raises(InputError):
        mq_random_instance(3, 2, 1)  # 2 edges cannot reach 3 vertices per class
    mq = mq_random_instance(3, 2, 1, allow_irrelevant=True)
    assert mq.irrelevant_vertices()


def test_mq_validation():
    with pytest.raises(InputError):
        MqInstance(2, 1, 1, {(0, 1): ((0, 0),)})
    with pytest.raises(InputError):
        MqInstance(2, 1, 1, {(0, 1): ((1, 1), (0, 0))})


def test_budget_formula_values():
    gg = mq_to_vd(mq_random_instance(3, 1, 1, seed=7))
    assert gg.k == 18 == 3 * 1 + 3 * (2 * 1 + 3) * 1
    assert budget(2, 2, 3) == 2 * 2 + 1 * 7 * 3


def test_nd_and_order_values():
    gg = mq_to_vd(mq_random_instance(3, 1, 1, seed=0))
    assert type_partition(gg.graph).nd == 45 == expected_nd(3)
    assert gg.graph.n == 81 == expected_order(3, 1, 1)
    gg = mq_to_vd(mq_random_instance(2, 1, 1, seed=0))
    assert type_partition(gg.graph).nd == 18
    assert gg.graph.n == 31 == 8 + 11 + 12


@pytest.mark.parametrize("q,r,s", [(2, 1, 1), (3, 1, 1), (3, 2, 2), (4, 1, 2), (2, 2, 3)])
def test_audit_passes_on_construction(q, r, s):
    gg = mq_to_vd(mq_random_instance(q, r, s, seed=1))
    report = gadget_audit(gg)
    assert report.ok, report.failures
    assert report.nd == 3 * q + 12 * comb(q, 2)


def test_audit_names_corrupted_demand():
    gg = mq_to_vd(mq_random_instance(3, 1, 1, seed=1))
    v = gg.part("I[1:1,2]-pos")[0]
    t = list(gg.t)
    t[v] += 1
    report = gadget_audit(replace(gg, t=tuple(t)))
    assert not report.ok
    assert any(f.rule == "incidence-demand" and f.gadget == "I[1:1,2]-pos" for f in report.failures)
    v = gg.part("M[1,2]-pos")[0]
    t = list(gg.t)
    t[v] += 1
    report = gadget_audit(replace(gg, t=tuple(t)))
    assert [f.rule for f in report.failures] == ["multiple-demand"]


def test_audit_catches_missing_edge():
    from dvdom import Graph
    gg = mq_to_vd(mq_random_instance(2, 1, 1, seed=1))
    drop = gg.graph.edges[0]
    broken = Graph(gg.graph.n, [e for e in gg.graph.edges if e != drop])
    assert not gadget_audit(replace(gg, graph=broken)).ok


def test_guard_demands():
    q, r, s = 3, 2, 2
    gg = mq_to_vd(mq_random_instance(q, r, s, seed=2))
    for name, gadget, part in part_names(q):
        if not name.endswith("guard"):
            continue
        want = {"L": r, "I": s}.get(gadget, 2 * r * s if part == "Lambda-guard" else s)
        assert {gg.t[v] for v in gg.part(name)} == {want}, name


def test_incidence_demands_distinct():
    gg = mq_to_vd(mq_random_instance(3, 2, 3, seed=4))
    for name in gg.parts:
        if name.startswith("I[") and name.endswith(("-pos", "-neg")):
            ds = [gg.t[v] for v in gg.part(name)]
            assert len(set(ds)) == len(ds)


def test_layout_contiguous_and_labelled():
    gg = mq_to_vd(mq_random_instance(3, 1, 1, seed=0))
    nxt = 0
    for name, _, _ in part_names(3):
        members = gg.part(name)
        assert members == tuple(range(nxt, nxt + len(members)))
        assert all(gg.labels[v] == name for v in members)
        nxt += len(members)
    assert nxt == gg.graph.n


def test_gadget_search_agrees_with_exhaustive_search_at_two_colours():
    for seed in range(3):
        gg = mq_to_vd(mq_random_instance(2, 1, 1, seed=seed))
        inst = gg.instance()
        pool = gg.selection_candidates()
        exhaustive = brute_force_decide(inst, gg.k, candidates=pool)
        assert (exhaustive is not None) == (decide_by_gadgets(gg) is not None)


def test_gadget_search_agrees_with_clique_existence():
    for q, r, s in [(3, 1, 1), (3, 1, 2)]:
        for seed in range(3):
            for mode in ("planted", "avoid"):
                try:
                    mq = mq_random_instance(q, r, s, seed=seed, mode=mode)
                except InputError:
                    continue  # dense pairs always contain a clique
                has_clique = mq.find_multicolored_clique() is not None
                assert (decide_by_gadgets(mq_to_vd(mq)) is not None) == has_clique
