"""Text formats: instances, tree decompositions, parse trees, solutions and gadget labels.

All files use 1-based vertex ids; the in-memory objects are 0-based.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .decomposition.modular import ParseNode
from .decomposition.treedec import TreeDecomposition
from .exceptions import FormatError, InputError
from .graph import DvdInstance, Graph


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    """Non-blank, non-comment lines as ``(lineno, tokens)``."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        yield lineno, tokens


def _int(token: str, what: str, lineno: int, path) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"{what} must be an integer, got {token!r}", lineno, path) from None


def _read(path) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


# ------------------------------------------------------------------ instances

_SECTIONS = {"e": 1, "t": 2, "d": 3}


def parse_instance(text: str, path=None) -> DvdInstance:
    """Parse the ``p dvd`` instance format.

    Sections must appear in the order header, edges, demands, radii.
    Missing demand/radius lines default to 1.
    """
    n = m = None
    edges: list[tuple[int, int]] = []
    t: dict[int, int] = {}
    d: dict[int, int] = {}
    stage = 0
    last = 0
    for lineno, tok in _lines(text):
        last = lineno
        kind = tok[0]
        if kind == "p":
            if n is not None:
                raise FormatError("second header line", lineno, path)
            if len(tok) != 4 or tok[1] != "dvd":
                raise FormatError("header must read 'p dvd <n> <m>'", lineno, path)
            n = _int(tok[2], "vertex count", lineno, path)
            m = _int(tok[3], "edge count", lineno, path)
            if n < 0 or m < 0:
                raise FormatError("counts must be non-negative", lineno, path)
            continue
        if kind not in _SECTIONS:
            raise FormatError(f"unknown line type {kind!r}", lineno, path)
        if n is None:
            raise FormatError("header 'p dvd <n> <m>' must come first", lineno, path)
        if _SECTIONS[kind] < stage:
            raise FormatError(f"'{kind}' line after a later section", lineno, path)
        stage = _SECTIONS[kind]
        if len(tok) != 3:
            raise FormatError(f"'{kind}' lines take exactly two integers", lineno, path)
        a = _int(tok[1], "vertex id", lineno, path)
        b = _int(tok[2], "value", lineno, path)
        if kind == "e":
            if not (1 <= a < b <= n):
                raise FormatError(f"edge endpoints must satisfy 1 <= u < v <= {n}, got {a} {b}", lineno, path)
            if len(edges) == m:
                raise FormatError(f"more than the declared {m} edges", lineno, path)
            edges.append((a - 1, b - 1))
            continue
        if not 1 <= a <= n:
            raise FormatError(f"vertex id {a} out of range 1..{n}", lineno, path)
        table = t if kind == "t" else d
        if a - 1 in table:
            raise FormatError(f"duplicate '{kind}' line for vertex {a}", lineno, path)
        if kind == "t" and b < 0:
            raise FormatError(f"demand must be >= 0, got {b}", lineno, path)
        if kind == "d" and b < 1:
            raise FormatError(f"radius must be >= 1, got {b}", lineno, path)
        table[a - 1] = b
    if n is None:
        raise FormatError("missing header 'p dvd <n> <m>'", last or None, path)
    if len(edges) != m:
        raise FormatError(f"header declares {m} edges but {len(edges)} were given", last, path)
    try:
        g = Graph(n, edges)
        return DvdInstance(g, [t.get(v, 1) for v in range(n)], [d.get(v, 1) for v in range(n)])
    except FormatError:
        raise
    except InputError as exc:
        raise FormatError(str(exc), None, path) from None


def read_instance(path) -> DvdInstance:
    return parse_instance(_read(path), path=os.fspath(path))


def format_instance(inst: DvdInstance, comments: Iterable[str] = ()) -> str:
    """Instance text; demand and radius lines are written only where they differ from 1."""
    out = [f"c {line}" for line in comments]
    g = inst.graph
    out.append(f"p dvd {g.n} {g.m}")
    out += [f"e {u + 1} {v + 1}" for u, v in g.edges]
    out += [f"t {v + 1} {x}" for v, x in enumerate(inst.t) if x != 1]
    out += [f"d {v + 1} {x}" for v, x in enumerate(inst.d) if x != 1]
    return "\n".join(out) + "\n"


def write_instance(path, inst: DvdInstance, comments: Iterable[str] = ()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_instance(inst, comments))


# ------------------------------------------------------- tree decompositions

def parse_td(text: str, n: int | None = None, path=None) -> TreeDecomposition:
    """Parse the PACE ``.td`` format into 0-based bags and tree edges."""
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges = []
    for lineno, tok in _lines(text):
        if tok[0] == "s":
            if header is not None:
                raise FormatError("second solution line", lineno, path)
            if len(tok) != 5 or tok[1] != "td":
                raise FormatError("header must read 's td <bags> <width+1> <n>'", lineno, path)
            header = [_int(x, "header field", lineno, path) for x in tok[2:]]
            if n is not None and header[2] != n:
                raise FormatError(f"decomposition is for {header[2]} vertices, graph has {n}", lineno, path)
            continue
        if header is None:
            raise FormatError("'s td' line must come first", lineno, path)
        nbags, _, nv = header
        if tok[0] == "b":
            if len(tok) < 2:
                raise FormatError("bag line needs an id", lineno, path)
            bid = _int(tok[1], "bag id", lineno, path)
            if not 1 <= bid <= nbags:
                raise FormatError(f"bag id {bid} out of range 1..{nbags}", lineno, path)
            if bid in bags:
                raise FormatError(f"bag {bid} defined twice", lineno, path)
            members = [_int(x, "vertex id", lineno, path) for x in tok[2:]]
            for v in members:
                if not 1 <= v <= nv:
                    raise FormatError(f"vertex id {v} out of range 1..{nv}", lineno, path)
            bags[bid] = frozenset(v - 1 for v in members)
            continue
        if len(tok) != 2:
            raise FormatError("tree edge lines hold two bag ids", lineno, path)
        i, j = (_int(x, "bag id", lineno, path) for x in tok)
        if not (1 <= i <= nbags and 1 <= j <= nbags):
            raise FormatError(f"tree edge {i} {j} references an unknown bag", lineno, path)
        edges.append((i - 1, j - 1))
    if header is None:
        raise FormatError("missing 's td' line", None, path)
    missing = [b for b in range(1, header[0] + 1) if b not in bags]
    if missing:
        raise FormatError(f"bag {missing[0]} declared but not given", None, path)
    width = max((len(b) for b in bags.values()), default=0)
    if width > header[1]:
        raise FormatError(f"header claims bags of at most {header[1]} vertices, found {width}", None, path)
    return TreeDecomposition(tuple(bags[b] for b in range(1, header[0] + 1)), tuple(edges))


def read_td(path, n: int | None = None) -> TreeDecomposition:
    return parse_td(_read(path), n, path=os.fspath(path))


def format_td(td: TreeDecomposition, n: int) -> str:
    out = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags, start=1):
        out.append(" ".join(["b", str(i), *(str(v + 1) for v in sorted(bag))]))
    out += [f"{i + 1} {j + 1}" for i, j in td.edges]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- parse trees

def format_parse_tree(node: ParseNode, indent: str = "  ") -> str:
    """Indented prefix listing; ``subst`` lines carry the quotient edges as ``i-j`` (1-based)."""
    out = []

    def emit(x: ParseNode, depth: int):
        pad = indent * depth
        if x.kind == "leaf":
            out.append(f"{pad}leaf {x.vertex + 1}")
            return
        if x.kind == "subst":
            pairs = " ".join(f"{i + 1}-{j + 1}" for i, j in x.quotient.edges)
            out.append(f"{pad}subst {x.p}" + (f" {pairs}" if pairs else ""))
        else:
            out.append(f"{pad}{x.kind} {x.p}")
        for c in x.children:
            emit(c, depth + 1)

    emit(node, 0)
    return "\n".join(out) + "\n"


def parse_parse_tree(text: str, path=None) -> ParseNode:
    """Inverse of :func:`format_parse_tree`. Child counts drive the structure; indentation is cosmetic."""
    rows = list(_lines(text))
    pos = 0

    def node() -> ParseNode:
        nonlocal pos
        if pos >= len(rows):
            raise FormatError("parse tree ends before all children were given", rows[-1][0] if rows else None, path)
        lineno, tok = rows[pos]
        pos += 1
        kind = tok[0]
        if kind == "leaf":
            if len(tok) != 2:
                raise FormatError("'leaf' takes one vertex id", lineno, path)
            v = _int(tok[1], "vertex id", lineno, path)
            if v < 1:
                raise FormatError(f"vertex id {v} must be >= 1", lineno, path)
            return ParseNode("leaf", vertex=v - 1)
        if kind not in ("union", "join", "subst") or len(tok) < 2:
            raise FormatError(f"unknown parse tree line {' '.join(tok)!r}", lineno, path)
        p = _int(tok[1], "child count", lineno, path)
        if p < 2:
            raise FormatError(f"{kind} needs at least 2 children, got {p}", lineno, path)
        quotient = None
        if kind == "subst":
            pairs = []
            for item in tok[2:]:
                a, sep, b = item.partition("-")
                if not sep:
                    raise FormatError(f"quotient edge {item!r} is not of the form i-j", lineno, path)
                i, j = _int(a, "module index", lineno, path), _int(b, "module index", lineno, path)
                if not (1 <= i <= p and 1 <= j <= p) or i == j:
                    raise FormatError(f"quotient edge {item!r} out of range 1..{p}", lineno, path)
                pairs.append((min(i, j) - 1, max(i, j) - 1))
            try:
                quotient = Graph(p, pairs)
            except InputError as exc:
                raise FormatError(str(exc), lineno, path) from None
        elif len(tok) != 2:
            raise FormatError(f"'{kind}' takes only a child count", lineno, path)
        children = tuple(node() for _ in range(p))
        return ParseNode(kind, children, quotient=quotient)

    if not rows:
        raise FormatError("empty parse tree", None, path)
    root = node()
    if pos != len(rows):
        raise FormatError("trailing lines after the root's subtree", rows[pos][0], path)
    return root


# ------------------------------------------------------------------ solutions

def parse_solution(text: str, n: int, path=None) -> set[int]:
    """Whitespace-separated 1-based ids. ``SIZE`` lines and a leading ``S`` token
    (the solver's own output) are accepted too."""
    chosen: set[int] = set()
    for lineno, tok in _lines(text):
        if tok[0] == "SIZE":
            continue
        if tok[0] == "S":
            tok = tok[1:]
        for x in tok:
            v = _int(x, "vertex id", lineno, path)
            if not 1 <= v <= n:
                raise FormatError(f"unknown vertex id {v} (instance has {n} vertices)", lineno, path)
            chosen.add(v - 1)
    return chosen


def read_solution(path, n: int) -> set[int]:
    return parse_solution(_read(path), n, path=os.fspath(path))


def format_solution(selected: Iterable[int]) -> str:
    ids = sorted(selected)
    line = " ".join(["S", *(str(v + 1) for v in ids)])
    return f"SIZE {len(ids)}\n{line}\n"


@dataclass(frozen=True)
class SolveRecord:
    """What ``solve --json`` prints; ``set`` holds 1-based ids."""

    algorithm: str
    size: int
    set: tuple[int, ...]
    valid: bool
    wall_ms: float | None
    width_used: int | None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> str:
        body = {"algorithm": self.algorithm, "size": self.size, "set": list(self.set),
                "valid": self.valid, "wall_ms": self.wall_ms, "width_used": self.width_used}
        body.update(self.extra)
        return json.dumps(body, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "SolveRecord":
        body = json.loads(text)
        core = {k: body.pop(k) for k in ("algorithm", "size", "set", "valid", "wall_ms", "width_used")}
        core["set"] = tuple(core["set"])
        return cls(**core, extra=body)


# ------------------------------------------------------------- gadget labels

def format_labels(gg) -> str:
    """Sidecar for a gadget graph: the crossing-edge order and each vertex's part.

    ``c edge <c>,<d> <j> <i>-<i'>`` says the ``j``-th edge between colours ``c``
    and ``d`` joins ``v_i^c`` and ``v_i'^d``; ``l <v> <part>`` labels vertex ``v``.
    """
    mq = gg.mq
    out = [f"c mq q={mq.q} r={mq.r} s={mq.s} k={gg.k}"]
    for (c, d), pairs in sorted(mq.pair_edges.items()):
        out += [f"c edge {c + 1},{d + 1} {j} {i}-{i2}" for j, (i, i2) in enumerate(pairs)]
    out += [f"l {v + 1} {name}" for v, name in enumerate(gg.labels)]
    return "\n".join(out) + "\n"


def parse_labels(text: str, path=None) -> dict[int, str]:
    """0-based vertex id to part name."""
    labels = {}
    for lineno, tok in _lines(text):
        if tok[0] != "l" or len(tok) != 3:
            raise FormatError("label lines read 'l <v> <part>'", lineno, path)
        labels[_int(tok[1], "vertex id", lineno, path) - 1] = tok[2]
    return labels
