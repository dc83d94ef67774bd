"""Solvers driven by a modular parse tree.

* ``rd_*``  -- R-Domination (unit demands, per-vertex radii), exponential only
  in the number of top-level modules.
* ``vd_*``  -- Vector Domination (unit radii), recursion over the parse tree
  splitting the budget among modules.
* ``dvd_*`` -- the general problem: top-level budget split handles radii >= 2,
  each module is then finished by the VD recursion.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterator, Mapping, Sequence

from .decomposition.modular import ParseNode, compute_modular_parse
from .exceptions import InapplicableError, InputError, RefusalError
from .graph import INF, DvdInstance, Graph, Solution, solve_by_component

DEFAULT_WIDTH_CAP = 20


def quotient_distances(h: Graph) -> list[list[float]]:
    return [h.distances(i) for i in range(h.n)]


def compositions(total: int, caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Vectors ``s`` with ``sum(s) == total`` and ``0 <= s[i] <= min(total, caps[i])``, lexicographic."""
    n = len(caps)
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + min(total, caps[i])
    if total > suffix[0]:
        return
    prefix: list[int] = []

    def rec(i, left):
        if i == n - 1:
            if left <= caps[i]:
                yield (*prefix, left)
            return
        lo = max(0, left - suffix[i + 1])
        for s in range(lo, min(left, caps[i]) + 1):
            prefix.append(s)
            yield from rec(i + 1, left - s)
            prefix.pop()

    if n == 0:
        if total == 0:
            yield ()
        return
    yield from rec(0, total)


class _ParseView:
    """Caches the binarised substitution view of each parse node."""

    def __init__(self):
        self._subst: dict[int, tuple[Graph, tuple[ParseNode, ...], list[list[float]]]] = {}
        self._keep: list = []  # pins synthetic nodes so their ids stay unique

    def split(self, node: ParseNode):
        key = id(node)
        hit = self._subst.get(key)
        if hit is None:
            h, mods = node.as_substitution()
            hit = (h, mods, quotient_distances(h))
            self._subst[key] = hit
            self._keep.append(node)
        return hit


def _check_width(pt: ParseNode, width_cap: int, top_only: bool = False) -> int:
    width = len(pt.as_substitution()[1]) if top_only and pt.kind != "leaf" else pt.width
    if width > width_cap:
        raise RefusalError(f"modular parse width {width} exceeds the cap of {width_cap}")
    return width


# ---------------------------------------------------------------- R-Domination

def rd_check(g: Graph, root: ParseNode, d: Sequence[int], selected_modules, view: _ParseView | None = None):
    """Try to pick exactly one vertex in each selected top-level module.

    Returns ``(True, S)`` with a valid R-dominating set, or ``(False, set())``
    when no set with exactly one vertex per module of ``selected_modules``
    (and none elsewhere) exists.  Vertices inside a selected module that must
    be served at distance 1 from their own module need a common *closed*
    neighbour there; ties go to the smallest id.
    """
    view = view or _ParseView()
    if root.kind == "leaf":
        return False, set()
    h, mods, dist = view.split(root)
    sel = sorted(set(selected_modules))
    if not sel:
        return False, set()
    if sel[0] < 0 or sel[-1] >= len(mods):
        raise InputError(f"module index out of range 0..{len(mods) - 1}")
    sel_set = set(sel)
    ell = [min((dist[i][j] for j in sel if j != i), default=INF) for i in range(len(mods))]
    for i, mod in enumerate(mods):
        if i not in sel_set and ell[i] > min(d[v] for v in mod.vertices):
            return False, set()
    out = set()
    for i in sel:
        members = mods[i].vertices
        needy = [v for v in members if d[v] == 1 and ell[i] > 1]
        if not needy:
            out.add(min(members))
            continue
        common = set(members)
        for v in needy:
            common &= (g.adj[v] & members) | {v}
            if not common:
                return False, set()
        out.add(min(common))
    return True, out


def rd_mw_solve(inst: DvdInstance, width_cap: int = DEFAULT_WIDTH_CAP) -> Solution:
    """Minimum R-dominating set; module subsets are tried by increasing size.

    ``info["modules"]`` lists the top-level module vertex sets of each
    component (original ids).
    """
    if not inst.is_rd():
        raise InapplicableError("R-Domination needs demand 1 on every vertex")
    modules_seen: list[frozenset[int]] = []
    widths = [0]
    selected: set[int] = set()
    for comp in inst.graph.components():
        if len(comp) == 1:
            continue
        sub, back = inst.restrict(comp) if len(comp) < inst.n else (inst, comp)
        pt = compute_modular_parse(sub.graph)
        widths.append(_check_width(pt, width_cap, top_only=True))
        view = _ParseView()
        _, mods, _ = view.split(pt)
        modules_seen.extend(frozenset(back[v] for v in m.vertices) for m in mods)
        found = _rd_first_success(sub, pt, len(mods), view)
        selected.update(back[v] for v in found)
    return Solution(frozenset(selected), "rd-mw", optimal=True, width=max(widths),
                    info={"modules": modules_seen})


def _rd_first_success(sub: DvdInstance, pt: ParseNode, p: int, view: _ParseView) -> set[int]:
    for size in range(1, p + 1):
        for sel in combinations(range(p), size):
            ok, s = rd_check(sub.graph, pt, sub.d, sel, view)
            if ok:
                return s
    raise AssertionError("selecting every module always succeeds on a feasible instance")


# ------------------------------------------------------------ Vector Domination

class _VdRecursion:
    def __init__(self, g: Graph, memoize: bool = True):
        self.g = g
        self.view = _ParseView()
        self.memo: dict | None = {} if memoize else None
        self._order: dict[int, tuple[int, ...]] = {}

    def _vertex_order(self, node):
        key = id(node)
        vs = self._order.get(key)
        if vs is None:
            vs = tuple(sorted(node.vertices))
            self._order[key] = vs
        return vs

    def decide(self, node: ParseNode, demand: Mapping[int, int], budget: int):
        if budget < 0 or budget > len(node.vertices):
            return False, frozenset()
        if node.kind == "leaf":
            v = node.vertex
            if budget == 0:
                return (demand[v] == 0), frozenset()
            return True, frozenset((v,))
        key = None
        if self.memo is not None:
            key = (id(node), budget, tuple(demand[v] for v in self._vertex_order(node)))
            hit = self.memo.get(key)
            if hit is not None:
                return hit
        result = self._split(node, demand, budget)
        if key is not None:
            self.memo[key] = result
        return result

    def _split(self, node, demand, budget):
        h, mods, _ = self.view.split(node)
        caps = [len(m.vertices) for m in mods]
        for comp in compositions(budget, caps):
            parts = []
            for i, mod in enumerate(mods):
                cover = sum(comp[j] for j in h.adj[i])
                reduced = {v: max(0, demand[v] - cover) for v in mod.vertices}
                ok, s = self.decide(mod, reduced, comp[i])
                if not ok:
                    break
                parts.append(s)
            else:
                return True, frozenset().union(*parts)
        return False, frozenset()


def vd_mw_decide(g: Graph, node: ParseNode, demand: Mapping[int, int] | Sequence[int], budget: int,
                 memoize: bool = True):
    """Is there a vector dominating set of size exactly ``budget`` in the graph of ``node``?

    Returns ``(flag, S)``.  ``demand`` may cover more vertices than ``node``.
    """
    if not isinstance(demand, Mapping):
        demand = dict(enumerate(demand))
    ok, s = _VdRecursion(g, memoize).decide(node, demand, budget)
    return ok, set(s)


def vd_mw_solve(inst: DvdInstance, width_cap: int = DEFAULT_WIDTH_CAP, memoize: bool = True) -> Solution:
    """Minimum vector dominating set by scanning budgets upward from 0."""
    if not inst.is_vd():
        raise InapplicableError("Vector Domination needs every radius equal to 1")
    widths = [0]

    def one(sub: DvdInstance) -> Solution:
        pt = compute_modular_parse(sub.graph)
        widths.append(_check_width(pt, width_cap))
        rec = _VdRecursion(sub.graph, memoize)
        demand = dict(enumerate(sub.t))
        for b in range(sub.n + 1):
            ok, s = rec.decide(pt, demand, b)
            if ok:
                return Solution(s, "vd-mw", optimal=True)
        raise AssertionError("the full vertex set is always a solution")

    selected, _ = solve_by_component(inst, one)
    return Solution(frozenset(selected), "vd-mw", optimal=True, width=max(widths))


# ----------------------------------------------------- Distance Vector Domination

def dvd_mw_decide(g: Graph, root: ParseNode, t: Sequence[int], d: Sequence[int], budget: int,
                  memoize: bool = True, _rec: _VdRecursion | None = None):
    """Is there a distance vector dominating set of size exactly ``budget``?

    ``g`` must be connected and ``root`` its parse tree.  For each budget split
    among the top-level modules, a vertex with radius >= 2 is reachable from
    every selected vertex of its own module and of modules within its radius
    in the quotient.  If those cannot meet its demand, the vertex itself has
    to be selected; it is handed to the module recursion with a demand no
    in-module neighbourhood can meet.  Radius-1 vertices keep their demand
    minus the budget of adjacent modules.
    """
    rec = _rec or _VdRecursion(g, memoize)
    if root.kind == "leaf":
        v = root.vertex
        ok, s = rec.decide(root, {v: t[v]}, budget)
        return ok, set(s)
    h, mods, dist = rec.view.split(root)
    caps = [len(m.vertices) for m in mods]
    members = [sorted(m.vertices) for m in mods]
    for comp in compositions(budget, caps):
        plans = []
        for i in range(len(mods)):
            forced = 0
            demand = {}
            adjacent = sum(comp[j] for j in h.adj[i])
            for v in members[i]:
                if d[v] >= 2:
                    reach = comp[i] + sum(comp[j] for j in range(len(mods)) if j != i and dist[i][j] <= d[v])
                    if t[v] > reach:
                        forced += 1
                        demand[v] = caps[i]
                    else:
                        demand[v] = 0
                else:
                    demand[v] = max(0, t[v] - adjacent)
            if forced > comp[i]:
                break
            plans.append(demand)
        else:
            parts = []
            for i, mod in enumerate(mods):
                ok, s = rec.decide(mod, plans[i], comp[i])
                if not ok:
                    break
                parts.append(s)
            else:
                return True, set().union(*parts)
    return False, set()


def dvd_mw_solve(inst: DvdInstance, width_cap: int = DEFAULT_WIDTH_CAP, memoize: bool = True) -> Solution:
    """Minimum distance vector dominating set by scanning budgets upward from 0."""
    widths = [0]

    def one(sub: DvdInstance) -> Solution:
        pt = compute_modular_parse(sub.graph)
        widths.append(_check_width(pt, width_cap))
        rec = _VdRecursion(sub.graph, memoize)
        for b in range(sub.n + 1):
            ok, s = dvd_mw_decide(sub.graph, pt, sub.t, sub.d, b, _rec=rec)
            if ok:
                return Solution(frozenset(s), "dvd-mw", optimal=True)
        raise AssertionError("the full vertex set is always a solution")

    selected, _ = solve_by_component(inst, one)
    return Solution(frozenset(selected), "dvd-mw", optimal=True, width=max(widths))
