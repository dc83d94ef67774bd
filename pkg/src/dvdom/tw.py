"""Dynamic programs over nice tree decompositions.

``vd_tw_solve`` handles Vector Domination with states (selection bits,
residual demands) per bag; ``rd_tw_solve`` handles R-Domination with a
signed serving-distance label per bag vertex.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .decomposition.treedec import (
    FORGET,
    INTRODUCE,
    JOIN,
    LEAF,
    NiceTreeDecomposition,
    min_degree_decomposition,
    to_nice,
    validate_nice,
)
from .exceptions import InapplicableError, InputError
from .graph import DvdInstance, Solution


def prepare_decomposition(inst: DvdInstance, ntd: NiceTreeDecomposition | None = None,
                          check: bool = True) -> NiceTreeDecomposition:
    """Use ``ntd`` after validation, or build one with the min-degree heuristic."""
    if ntd is None:
        return to_nice(inst.graph, min_degree_decomposition(inst.graph))
    if check and not validate_nice(inst.graph, ntd):
        raise InputError("the nice tree decomposition does not match the graph")
    return ntd


@dataclass
class DpStats:
    nodes: int = 0
    max_rows: int = 0
    bound_violations: int = 0


# ------------------------------------------------------------ Vector Domination

def _vd_keys(bag, t):
    """All canonical (selection, residual) keys of a bag."""
    s = len(bag)
    for sel in product((0, 1), repeat=s):
        ranges = [(0,) if sel[k] else range(t[bag[k]] + 1) for k in range(s)]
        for res in product(*ranges):
            yield sel, res


def vd_tw_tables(inst: DvdInstance, ntd: NiceTreeDecomposition):
    """Fill the VD tables bottom-up.

    ``tables[i][(L, K)]`` is the fewest selected vertices in the processed
    part below node ``i`` such that every forgotten unselected vertex is
    dominated, bag vertex ``k`` is selected iff ``L[k] == 1``, and each
    unselected bag vertex has at least ``K[k]`` selected neighbours among
    processed vertices.  Missing keys are infeasible.  ``choice[i]`` holds
    the argmin used for backtracking.
    """
    g, t = inst.graph, inst.t
    tables: list[dict] = [None] * len(ntd)  # type: ignore[list-item]
    choice: list[dict] = [None] * len(ntd)  # type: ignore[list-item]
    stats = DpStats(nodes=len(ntd))
    tau = inst.tau
    for i in range(len(ntd)):
        kind, bag = ntd.kind[i], ntd.bag[i]
        table: dict = {}
        back: dict = {}
        if kind == LEAF:
            table[((), ())] = 0
        elif kind == INTRODUCE:
            child = tables[ntd.children[i][0]]
            v = ntd.vertex[i]
            p = bag.index(v)
            nbr = [u in g.adj[v] for u in bag]
            for sel, res in _vd_keys(bag, t):
                csel = sel[:p] + sel[p + 1:]
                if sel[p]:
                    cres = tuple(max(0, r - 1) if nbr[k] and not sel[k] else r
                                 for k, r in enumerate(res) if k != p)
                    cost = child.get((csel, cres))
                    if cost is not None:
                        table[(sel, res)] = cost + 1
                else:
                    served = sum(1 for k in range(len(bag)) if nbr[k] and sel[k])
                    if res[p] > served:
                        continue
                    cost = child.get((csel, res[:p] + res[p + 1:]))
                    if cost is not None:
                        table[(sel, res)] = cost
        elif kind == FORGET:
            c = ntd.children[i][0]
            child = tables[c]
            v = ntd.vertex[i]
            p = ntd.bag[c].index(v)
            tv = t[v]
            for (sel, res), cost in child.items():
                if not sel[p] and res[p] != tv:
                    continue
                key = (sel[:p] + sel[p + 1:], res[:p] + res[p + 1:])
                old = table.get(key)
                if old is None or cost < old:
                    table[key] = cost
                    back[key] = sel[p]
        elif kind == JOIN:
            c1, c2 = ntd.children[i]
            left, right = tables[c1], tables[c2]
            s = len(bag)
            adj_rows = [[bag[j] in g.adj[bag[k]] for j in range(s)] for k in range(s)]
            for sel, res in _vd_keys(bag, t):
                nsel = sum(sel)
                splits = []
                for k in range(s):
                    if sel[k]:
                        splits.append(((0, 0),))
                        continue
                    c = sum(1 for j in range(s) if sel[j] and adj_rows[k][j])
                    if res[k] <= c:
                        splits.append(((0, 0),))
                    else:
                        splits.append(tuple((c + a, res[k] - a) for a in range(res[k] - c + 1)))
                best, arg = None, None
                for combo in product(*splits):
                    a = left.get((sel, tuple(x for x, _ in combo)))
                    if a is None:
                        continue
                    b = right.get((sel, tuple(y for _, y in combo)))
                    if b is None:
                        continue
                    total = a + b - nsel
                    if best is None or total < best:
                        best, arg = total, combo
                if best is not None:
                    table[(sel, res)] = best
                    back[(sel, res)] = arg
        else:
            raise InputError(f"unknown node kind {kind!r}")
        s = len(bag)
        if len(table) > (2 ** s) * (tau + 1) ** s:
            stats.bound_violations += 1
        stats.max_rows = max(stats.max_rows, len(table))
        tables[i] = table
        choice[i] = back
    return tables, choice, stats


def vd_tw_lookup(table: dict, sel, res) -> float:
    """Table value with canonicalisation (residuals of selected vertices ignored)."""
    canon = tuple(0 if s else r for s, r in zip(sel, res))
    return table.get((tuple(sel), canon), float("inf"))


def _vd_backtrack(inst: DvdInstance, ntd: NiceTreeDecomposition, tables, choice) -> set[int]:
    g = inst.graph
    picked: set[int] = set()
    stack = [(ntd.root, ((), ()))]
    while stack:
        i, (sel, res) = stack.pop()
        bag = ntd.bag[i]
        picked.update(v for v, s in zip(bag, sel) if s)
        kind = ntd.kind[i]
        if kind == LEAF:
            continue
        if kind == INTRODUCE:
            v = ntd.vertex[i]
            p = bag.index(v)
            csel = sel[:p] + sel[p + 1:]
            if sel[p]:
                cres = tuple(max(0, r - 1) if bag[k] in g.adj[v] and not sel[k] else r
                             for k, r in enumerate(res) if k != p)
            else:
                cres = res[:p] + res[p + 1:]
            stack.append((ntd.children[i][0], (csel, cres)))
        elif kind == FORGET:
            c = ntd.children[i][0]
            v = ntd.vertex[i]
            p = ntd.bag[c].index(v)
            bit = choice[i][(sel, res)]
            stack.append((c, (sel[:p] + (bit,) + sel[p:], res[:p] + (0 if bit else inst.t[v],) + res[p:])))
        else:
            combo = choice[i][(sel, res)]
            c1, c2 = ntd.children[i]
            stack.append((c1, (sel, tuple(x for x, _ in combo))))
            stack.append((c2, (sel, tuple(y for _, y in combo))))
    return picked


def vd_tw_solve(inst: DvdInstance, ntd: NiceTreeDecomposition | None = None) -> Solution:
    """Minimum vector dominating set by dynamic programming on a nice tree decomposition.

    Without ``ntd`` a min-degree heuristic decomposition is used.
    ``info`` reports the largest table and the count of tables exceeding
    ``2^s (tau+1)^s`` rows (always zero).
    """
    if not inst.is_vd():
        raise InapplicableError("Vector Domination needs every radius equal to 1")
    ntd = prepare_decomposition(inst, ntd)
    tables, choice, stats = vd_tw_tables(inst, ntd)
    best = tables[ntd.root].get(((), ()))
    if best is None:
        raise InputError("instance has no solution")
    picked = _vd_backtrack(inst, ntd, tables, choice)
    return Solution(frozenset(picked), "vd-tw", optimal=True, width=ntd.width,
                    info={"value": best, "max_rows": stats.max_rows,
                          "bound_violations": stats.bound_violations})


# ----------------------------------------------------------------- R-Domination

def _rd_options(inst: DvdInstance, v: int, free: int) -> tuple[int, ...]:
    if inst.t[v] == 0:
        return (0, free)
    return tuple(range(inst.d[v] + 1))


def rd_tw_tables(inst: DvdInstance, ntd: NiceTreeDecomposition):
    """Fill the RD tables bottom-up.

    A state gives each bag vertex a signed label: ``0`` means selected,
    ``+k`` means a neighbour with label of magnitude at most ``k-1`` has
    already been seen (so ``v`` is within ``k`` of the solution), ``-k``
    means such a neighbour is still owed.  Magnitudes never exceed the
    vertex's radius; a forgotten vertex must not carry a negative label.
    Vertices without demand use the inert label ``delta+1``.
    """
    g = inst.graph
    free = inst.delta + 1
    tables: list[dict] = [None] * len(ntd)  # type: ignore[list-item]
    choice: list[dict] = [None] * len(ntd)  # type: ignore[list-item]
    stats = DpStats(nodes=len(ntd))
    delta = inst.delta
    for i in range(len(ntd)):
        kind, bag = ntd.kind[i], ntd.bag[i]
        table: dict = {}
        back: dict = {}
        if kind == LEAF:
            table[()] = 0
        elif kind == INTRODUCE:
            c = ntd.children[i][0]
            v = ntd.vertex[i]
            p = bag.index(v)
            cbag = ntd.bag[c]
            nbr = [u in g.adj[v] for u in cbag]
            for key, cost in tables[c].items():
                for lab in _rd_options(inst, v, free):
                    new = list(key)
                    if lab != free:
                        for k, other in enumerate(key):
                            if nbr[k] and other < 0 and lab <= -other - 1:
                                new[k] = -other
                    if lab == 0 or lab == free:
                        own = lab
                    elif any(nbr[k] and other != free and abs(other) <= lab - 1 for k, other in enumerate(key)):
                        own = lab
                    else:
                        own = -lab
                    full = tuple(new[:p]) + (own,) + tuple(new[p:])
                    total = cost + (1 if lab == 0 else 0)
                    old = table.get(full)
                    if old is None or total < old:
                        table[full] = total
                        back[full] = key
        elif kind == FORGET:
            c = ntd.children[i][0]
            p = ntd.bag[c].index(ntd.vertex[i])
            for key, cost in tables[c].items():
                if key[p] < 0:
                    continue
                short = key[:p] + key[p + 1:]
                old = table.get(short)
                if old is None or cost < old:
                    table[short] = cost
                    back[short] = key
        elif kind == JOIN:
            c1, c2 = ntd.children[i]
            groups: dict = {}
            for key, cost in tables[c2].items():
                groups.setdefault(tuple(abs(x) for x in key), []).append((key, cost))
            for k1, a in tables[c1].items():
                shape = tuple(abs(x) for x in k1)
                zeros = sum(1 for x in k1 if x == 0)
                for k2, b in groups.get(shape, ()):
                    merged = tuple(x if x >= 0 else (y if y >= 0 else x) for x, y in zip(k1, k2))
                    total = a + b - zeros
                    old = table.get(merged)
                    if old is None or total < old:
                        table[merged] = total
                        back[merged] = (k1, k2)
        else:
            raise InputError(f"unknown node kind {kind!r}")
        if len(table) > (2 * delta + 1) ** len(bag):
            stats.bound_violations += 1
        stats.max_rows = max(stats.max_rows, len(table))
        tables[i] = table
        choice[i] = back
    return tables, choice, stats


def rd_tw_solve(inst: DvdInstance, ntd: NiceTreeDecomposition | None = None) -> Solution:
    """Minimum R-dominating set by dynamic programming on a nice tree decomposition."""
    if not inst.is_rd():
        raise InapplicableError("R-Domination needs demand 1 on every vertex")
    ntd = prepare_decomposition(inst, ntd)
    tables, choice, stats = rd_tw_tables(inst, ntd)
    best = tables[ntd.root].get(())
    if best is None:
        raise InputError("instance has no solution")
    picked: set[int] = set()
    stack = [(ntd.root, ())]
    while stack:
        i, key = stack.pop()
        picked.update(v for v, lab in zip(ntd.bag[i], key) if lab == 0)
        kind = ntd.kind[i]
        if kind == LEAF:
            continue
        prev = choice[i][key]
        if kind == JOIN:
            stack.append((ntd.children[i][0], prev[0]))
            stack.append((ntd.children[i][1], prev[1]))
        else:
            stack.append((ntd.children[i][0], prev))
    return Solution(frozenset(picked), "rd-tw", optimal=True, width=ntd.width,
                    info={"value": best, "max_rows": stats.max_rows,
                          "bound_violations": stats.bound_violations})
