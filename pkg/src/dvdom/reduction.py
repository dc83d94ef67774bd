"""Multicolored-clique instances and their gadget translation to Vector Domination.

The construction produces, for a regular multicolored-clique input with
``q`` colours, ``r+1`` vertices per colour and ``s+1`` edges per colour
pair, a VD instance whose type partition has ``3q + 12*C(q,2)`` classes and
whose budget is ``q*r + C(q,2)*(2r+3)*s``.  Vertex ids are laid out in
contiguous blocks: selection gadgets by colour, then multiple gadgets by
colour pair, then incidence gadgets by colour pair.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb

from .decomposition.modular import type_partition
from .exceptions import InputError
from .graph import DvdInstance, Graph, is_dvd_set


@dataclass(frozen=True)
class MqInstance:
    """Regular multicolored-clique instance.

    Vertex ``v_i^c`` (colour ``c`` in ``0..q-1``, index ``i`` in ``0..r``) has
    id ``c*(r+1) + i``.  ``pair_edges[(c, d)]`` (``c < d``) lists the crossing
    edges as ``(i, j)`` index pairs in lexicographic order, which fixes the
    edge numbering used by the incidence gadgets.
    """

    q: int
    r: int
    s: int
    pair_edges: dict = field(hash=False)

    def __post_init__(self):
        if self.q < 2 or self.r < 1 or self.s < 1:
            raise InputError(f"need q >= 2, r >= 1, s >= 1 (got q={self.q}, r={self.r}, s={self.s})")
        for c, d in combinations(range(self.q), 2):
            edges = self.pair_edges.get((c, d))
            if edges is None:
                raise InputError(f"missing edge list for colour pair {(c, d)}")
            if len(edges) != self.s + 1 or len(set(edges)) != len(edges):
                raise InputError(f"colour pair {(c, d)} needs exactly {self.s + 1} distinct edges")
            if list(edges) != sorted(edges):
                raise InputError(f"edges of colour pair {(c, d)} must be listed in lexicographic order")
            for i, j in edges:
                if not (0 <= i <= self.r and 0 <= j <= self.r):
                    raise InputError(f"edge {(i, j)} of pair {(c, d)} out of range 0..{self.r}")
        if set(self.pair_edges) != set(combinations(range(self.q), 2)):
            raise InputError("edge lists must be keyed by colour pairs (c, d) with c < d")

    @classmethod
    def from_edges(cls, q: int, r: int, edges) -> "MqInstance":
        """Build from ``((c, i), (d, j))`` endpoint pairs; ``s`` is inferred."""
        pairs: dict = {(c, d): [] for c, d in combinations(range(q), 2)}
        for (c, i), (d, j) in edges:
            if c == d:
                raise InputError(f"edge inside colour class {c}: colouring not proper")
            if c > d:
                (c, i), (d, j) = (d, j), (c, i)
            pairs[(c, d)].append((i, j))
        sizes = {len(v) for v in pairs.values()}
        if len(sizes) != 1:
            raise InputError("every colour pair needs the same number of edges")
        s = sizes.pop() - 1
        return cls(q, r, s, {k: tuple(sorted(v)) for k, v in pairs.items()})

    def vertex(self, c: int, i: int) -> int:
        return c * (self.r + 1) + i

    @property
    def n(self) -> int:
        return self.q * (self.r + 1)

    def color(self, v: int) -> int:
        return v // (self.r + 1)

    def graph(self) -> Graph:
        edges = [(self.vertex(c, i), self.vertex(d, j))
                 for (c, d), es in sorted(self.pair_edges.items()) for i, j in es]
        return Graph(self.n, edges)

    def irrelevant_vertices(self) -> list[int]:
        """Vertices lacking a neighbour in some other colour class."""
        seen: dict[int, set[int]] = {v: set() for v in range(self.n)}
        for (c, d), es in self.pair_edges.items():
            for i, j in es:
                seen[self.vertex(c, i)].add(d)
                seen[self.vertex(d, j)].add(c)
        return [v for v in range(self.n) if len(seen[v]) < self.q - 1]

    def find_multicolored_clique(self) -> tuple[int, ...] | None:
        """One vertex index per colour forming a clique, or ``None``."""
        pairs = {k: set(v) for k, v in self.pair_edges.items()}
        pick: list[int] = []

        def extend(c):
            if c == self.q:
                return True
            for i in range(self.r + 1):
                if all((pick[a], i) in pairs[(a, c)] for a in range(c)):
                    pick.append(i)
                    if extend(c + 1):
                        return True
                    pick.pop()
            return False

        return tuple(pick) if extend(0) else None


def mq_random_instance(q: int, r: int, s: int, seed: int = 0, mode: str = "random",
                       allow_irrelevant: bool = False, max_tries: int = 1000) -> MqInstance:
    """Random regular instance.

    Each colour pair gets a random perfect matching between the two classes
    (so every vertex sees every other colour) topped up with random extra
    edges.  ``mode="planted"`` forces a random multicolored clique;
    ``mode="avoid"`` resamples until no multicolored clique exists, giving up
    after ``max_tries``.  A pair can hold at most ``(r+1)^2`` edges and needs
    at least ``r+1`` to reach every vertex; the latter is waived with
    ``allow_irrelevant=True``.
    """
    if q < 2 or r < 1 or s < 1:
        raise InputError(f"need q >= 2, r >= 1, s >= 1 (got q={q}, r={r}, s={s})")
    if s + 1 > (r + 1) ** 2:
        raise InputError(f"s+1={s + 1} edges do not fit between two classes of {r + 1} vertices")
    if s + 1 < r + 1 and not allow_irrelevant:
        raise InputError(f"with s+1={s + 1} < r+1={r + 1} edges per colour pair some vertex has no "
                         "neighbour in another class; pass allow_irrelevant=True to accept that")
    if mode not in ("random", "planted", "avoid"):
        raise InputError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    for _ in range(max_tries):
        planted = [rng.randrange(r + 1) for _ in range(q)] if mode == "planted" else None
        pairs = {}
        for c, d in combinations(range(q), 2):
            perm = list(range(r + 1))
            rng.shuffle(perm)
            if planted is not None:
                # make the matching send planted[c] to planted[d]
                k = perm.index(planted[d])
                perm[planted[c]], perm[k] = perm[k], perm[planted[c]]
            chosen = [(i, perm[i]) for i in range(r + 1)]
            if len(chosen) > s + 1:
                keep = [(planted[c], planted[d])] if planted is not None else []
                rest = [e for e in chosen if e not in keep]
                chosen = keep + rng.sample(rest, s + 1 - len(keep))
            others = [e for e in product(range(r + 1), repeat=2) if e not in set(chosen)]
            chosen += rng.sample(others, s + 1 - len(chosen))
            pairs[(c, d)] = tuple(sorted(chosen))
        mq = MqInstance(q, r, s, pairs)
        if mode != "avoid" or mq.find_multicolored_clique() is None:
            return mq
    raise InputError(f"no clique-free instance found for q={q}, r={r}, s={s} in {max_tries} tries")


# parts of each gadget in id order, with (size, kind) as functions of (r, s)
_SELECTION_PARTS = ("neg", "pos", "guard")
_MULTIPLE_PARTS = ("Lambda-guard", "Lambda-pos", "Lambda-neg", "pos", "neg", "guard")
_INCIDENCE_PARTS = ("pos", "neg", "guard")


def _part_size(gadget: str, part: str, r: int, s: int) -> int:
    if gadget == "L":
        return {"neg": r, "pos": r, "guard": r + 1}[part]
    if gadget == "M":
        return {"Lambda-guard": 2 * r * s + 1, "Lambda-pos": 2 * r * s, "Lambda-neg": 2 * r * s,
                "pos": s, "neg": s, "guard": s + 1}[part]
    return s + 1


_CLIQUE_PARTS = {("L", "neg"), ("L", "pos"), ("M", "Lambda-pos"), ("M", "Lambda-neg")}


@dataclass
class GadgetGraph:
    """The VD instance built from an :class:`MqInstance`, with part labels."""

    mq: MqInstance
    graph: Graph
    t: tuple[int, ...]
    k: int
    parts: dict[str, tuple[int, ...]]
    labels: tuple[str, ...]

    def instance(self) -> DvdInstance:
        return DvdInstance(self.graph, self.t, 1, budget=self.k)

    def part(self, name: str) -> tuple[int, ...]:
        return self.parts[name]

    def selection_candidates(self) -> list[int]:
        """Vertices of every ``pos`` / ``neg`` part (cliques and bags).

        Guards only exist to force selections into these parts, so size-``k``
        solutions are searched among them.
        """
        return sorted(v for name, members in self.parts.items()
                      if name.endswith(("-pos", "-neg")) for v in members)


def _pair_name(c, d):
    return f"{c + 1},{d + 1}"


def part_names(q: int) -> list[tuple[str, str, str]]:
    """``(name, gadget kind, part)`` in vertex-id order."""
    names = []
    for c in range(q):
        names += [(f"L[{c + 1}]-{p}", "L", p) for p in _SELECTION_PARTS]
    for c, d in combinations(range(q), 2):
        names += [(f"M[{_pair_name(c, d)}]-{p}", "M", p) for p in _MULTIPLE_PARTS]
    for c, d in combinations(range(q), 2):
        for side in (c, d):
            names += [(f"I[{side + 1}:{_pair_name(c, d)}]-{p}", "I", p) for p in _INCIDENCE_PARTS]
    return names


def _expected_links(q: int) -> set[frozenset[str]]:
    """Pairs of parts joined completely; any other pair of distinct parts is non-adjacent."""
    links = set()

    def link(a, b):
        links.add(frozenset((a, b)))

    for c in range(q):
        L = f"L[{c + 1}]"
        link(f"{L}-neg", f"{L}-pos")
        link(f"{L}-guard", f"{L}-neg")
        link(f"{L}-guard", f"{L}-pos")
    for c, d in combinations(range(q), 2):
        M = f"M[{_pair_name(c, d)}]"
        link(f"{M}-guard", f"{M}-pos")
        link(f"{M}-guard", f"{M}-neg")
        link(f"{M}-pos", f"{M}-Lambda-pos")
        link(f"{M}-neg", f"{M}-Lambda-neg")
        link(f"{M}-Lambda-pos", f"{M}-Lambda-neg")
        link(f"{M}-Lambda-guard", f"{M}-Lambda-pos")
        link(f"{M}-Lambda-guard", f"{M}-Lambda-neg")
        for side in (c, d):
            Ig = f"I[{side + 1}:{_pair_name(c, d)}]"
            link(f"{Ig}-guard", f"{Ig}-pos")
            link(f"{Ig}-guard", f"{Ig}-neg")
            link(f"{Ig}-pos", f"L[{side + 1}]-pos")
            link(f"{Ig}-pos", f"{M}-Lambda-pos")
            link(f"{Ig}-neg", f"L[{side + 1}]-neg")
            link(f"{Ig}-neg", f"{M}-Lambda-neg")
    return links


def expected_demands(mq: MqInstance, parts: dict[str, tuple[int, ...]]) -> dict[int, tuple[int, str]]:
    """Demand of every vertex with the rule that sets it."""
    r, s = mq.r, mq.s
    out: dict[int, tuple[int, str]] = {}
    for c in range(mq.q):
        for p in _SELECTION_PARTS:
            for v in parts[f"L[{c + 1}]-{p}"]:
                out[v] = (r, "selection-demand")
    for c, d in combinations(range(mq.q), 2):
        M = f"M[{_pair_name(c, d)}]"
        for p in ("Lambda-guard", "Lambda-pos", "Lambda-neg"):
            for v in parts[f"{M}-{p}"]:
                out[v] = (2 * r * s, "multiple-demand")
        for p in ("pos", "neg"):
            for j, v in enumerate(parts[f"{M}-{p}"], start=1):
                out[v] = (2 * r * j, "multiple-demand")
        for v in parts[f"{M}-guard"]:
            out[v] = (s, "multiple-demand")
        for side in (c, d):
            Ig = f"I[{side + 1}:{_pair_name(c, d)}]"
            edges = mq.pair_edges[(c, d)]
            for j, v in enumerate(parts[f"{Ig}-pos"]):
                i = edges[j][0] if side == c else edges[j][1]
                out[v] = (2 * r * j + i, "incidence-demand")
            for j, v in enumerate(parts[f"{Ig}-neg"]):
                i = edges[j][0] if side == c else edges[j][1]
                out[v] = (2 * r * (s - j) + r - i, "incidence-demand")
            for v in parts[f"{Ig}-guard"]:
                out[v] = (s, "incidence-demand")
    return out


def budget(q: int, r: int, s: int) -> int:
    return q * r + comb(q, 2) * (2 * r + 3) * s


def expected_nd(q: int) -> int:
    return 3 * q + 12 * comb(q, 2)


def expected_order(q: int, r: int, s: int) -> int:
    return q * (3 * r + 1) + comb(q, 2) * (6 * r * s + 3 * s + 2) + 2 * comb(q, 2) * 3 * (s + 1)


def mq_to_vd(mq: MqInstance) -> GadgetGraph:
    """Assemble selection, multiple and incidence gadgets with radius 1 everywhere."""
    parts: dict[str, tuple[int, ...]] = {}
    labels: list[str] = []
    kinds: dict[str, str] = {}
    nxt = 0
    for name, gadget, part in part_names(mq.q):
        size = _part_size(gadget, part, mq.r, mq.s)
        parts[name] = tuple(range(nxt, nxt + size))
        labels += [name] * size
        kinds[name] = "clique" if (gadget, part) in _CLIQUE_PARTS else "bag"
        nxt += size
    edges = []
    for name, members in parts.items():
        if kinds[name] == "clique":
            edges += combinations(members, 2)
    for link in sorted(tuple(sorted(x)) for x in _expected_links(mq.q)):
        a, b = link
        edges += [(u, v) for u in parts[a] for v in parts[b]]
    g = Graph(nxt, edges)
    demands = expected_demands(mq, parts)
    t = tuple(demands[v][0] for v in range(nxt))
    return GadgetGraph(mq, g, t, budget(mq.q, mq.r, mq.s), parts, tuple(labels))


@dataclass(frozen=True)
class AuditFailure:
    gadget: str
    rule: str
    detail: str


@dataclass
class AuditReport:
    failures: list[AuditFailure]
    nd: int

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok


def gadget_audit(gg: GadgetGraph) -> AuditReport:
    """Re-derive every structural and demand rule and report violations."""
    mq, g = gg.mq, gg.graph
    q, r, s = mq.q, mq.r, mq.s
    fails: list[AuditFailure] = []

    def fail(gadget, rule, detail):
        fails.append(AuditFailure(gadget, rule, detail))

    names = part_names(q)
    if [n for n, _, _ in names] != list(gg.parts):
        fail("*", "layout", "parts missing or out of canonical order")
    for name, gadget, part in names:
        members = gg.parts.get(name, ())
        want = _part_size(gadget, part, r, s)
        if len(members) != want:
            fail(name, "part-size", f"{len(members)} vertices, expected {want}")
        clique = (gadget, part) in _CLIQUE_PARTS
        for u, v in combinations(members, 2):
            if g.has_edge(u, v) != clique:
                fail(name, "clique" if clique else "bag", f"pair ({u}, {v}) {'not ' if clique else ''}adjacent")
                break
    links = _expected_links(q)
    label_of = {v: name for name, members in gg.parts.items() for v in members}
    bad_pairs = set()
    for u, v in g.edges:
        a, b = label_of.get(u), label_of.get(v)
        if a != b and frozenset((a, b)) not in links:
            bad_pairs.add(tuple(sorted((a, b))))
    for a, b in sorted(bad_pairs):
        fail(a, "connection", f"unexpected edges to {b}")
    for link in sorted(tuple(sorted(x)) for x in links):
        a, b = link
        if a not in gg.parts or b not in gg.parts:
            continue
        if not all(g.has_edge(u, v) for u in gg.parts[a] for v in gg.parts[b]):
            fail(a, "connection", f"not completely joined to {b}")
    if not fails:
        expected = expected_demands(mq, gg.parts)
        for v in range(g.n):
            want, rule = expected[v]
            if gg.t[v] != want:
                fail(label_of[v], rule, f"vertex {v} has demand {gg.t[v]}, expected {want}")
        for name in gg.parts:
            if name.startswith("I[") and (name.endswith("-pos") or name.endswith("-neg")):
                ds = [gg.t[v] for v in gg.parts[name]]
                if len(set(ds)) != len(ds):
                    fail(name, "incidence-distinct", f"repeated demands {ds}")
    if gg.k != budget(q, r, s):
        fail("*", "budget", f"k={gg.k}, expected {budget(q, r, s)}")
    if g.n != expected_order(q, r, s):
        fail("*", "order", f"{g.n} vertices, expected {expected_order(q, r, s)}")
    nd = type_partition(g).nd
    if nd != expected_nd(q):
        fail("*", "neighborhood-diversity", f"{nd} type classes, expected {expected_nd(q)}")
    return AuditReport(fails, nd)


def decide_by_gadgets(gg: GadgetGraph) -> frozenset | None:
    """Exhaustive search for a size-``k`` solution respecting the gadget quotas.

    Each guard fixes how many of its ``pos``/``neg`` neighbours are selected
    (``r`` per selection gadget, ``2rs`` in the Lambda cliques and ``s`` in
    every multiple or incidence gadget); the quotas add up to ``k``.  Twins
    with equal demand are interchangeable, so only counts are enumerated for
    them.  Once the selection gadgets are fixed, colour pairs no longer
    interact and are searched independently.  A returned set is re-verified
    on the whole instance.
    """
    mq, g, t = gg.mq, gg.graph, gg.t
    q, r, s = mq.q, mq.r, mq.s
    adj_mask = [sum(1 << u for u in g.adj[v]) for v in range(g.n)]

    def bits(vs):
        m = 0
        for v in vs:
            m |= 1 << v
        return m

    def ok(sel, local):
        for v in local:
            if not sel >> v & 1 and (adj_mask[v] & sel).bit_count() < t[v]:
                return False
        return True

    def selection_mask(c, i):
        pos, neg = gg.parts[f"L[{c + 1}]-pos"], gg.parts[f"L[{c + 1}]-neg"]
        return bits(pos[:i] + neg[:r - i])

    pair_options = {}
    for c, d in combinations(range(q), 2):
        M = f"M[{_pair_name(c, d)}]"
        lam_pos, lam_neg = gg.parts[f"{M}-Lambda-pos"], gg.parts[f"{M}-Lambda-neg"]
        lam = [bits(lam_pos[:a] + lam_neg[:2 * r * s - a]) for a in range(2 * r * s + 1)]
        mult = [bits(x) for x in combinations(gg.parts[f"{M}-pos"] + gg.parts[f"{M}-neg"], s)]
        inc, local = [], [v for p in _MULTIPLE_PARTS for v in gg.parts[f"{M}-{p}"]]
        for side in (c, d):
            Ig = f"I[{side + 1}:{_pair_name(c, d)}]"
            inc.append([bits(x) for x in combinations(gg.parts[f"{Ig}-pos"] + gg.parts[f"{Ig}-neg"], s)])
            local += [v for p in _INCIDENCE_PARTS for v in gg.parts[f"{Ig}-{p}"]]
        pair_options[(c, d)] = (lam, mult, inc, local)

    cache: dict = {}

    def solve_pair(c, d, ic, id_):
        key = (c, d, ic, id_)
        if key not in cache:
            lam, mult, inc, local = pair_options[(c, d)]
            base = selection_mask(c, ic) | selection_mask(d, id_)
            found = None
            for parts in product(lam, mult, inc[0], inc[1]):
                sel = base | parts[0] | parts[1] | parts[2] | parts[3]
                if ok(sel, local):
                    found = parts[0] | parts[1] | parts[2] | parts[3]
                    break
            cache[key] = found
        return cache[key]

    for choice in product(range(r + 1), repeat=q):
        total = 0
        for c in range(q):
            total |= selection_mask(c, choice[c])
        for c, d in combinations(range(q), 2):
            part = solve_pair(c, d, choice[c], choice[d])
            if part is None:
                break
            total |= part
        else:
            chosen = frozenset(v for v in range(g.n) if total >> v & 1)
            if len(chosen) == gg.k and is_dvd_set(gg.instance(), chosen):
                return chosen
    return None
