"""Instance families for the command line and benchmarks.

Every family is a pure function of its parameters and ``seed``.  Demands
``t`` and radii ``d`` may be constants or drawn at random up to ``tmax`` /
``dmax``; demands are then clamped to the ball size so the instance is
always feasible.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .exceptions import InputError
from .graph import DvdInstance, Graph
from .reduction import GadgetGraph, mq_random_instance, mq_to_vd


@dataclass
class Generated:
    instance: DvdInstance
    comments: list[str]
    gadgets: GadgetGraph | None = None


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError(f"a cycle needs at least 3 vertices, got {n}")
    return Graph(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def grid_graph(rows: int, cols: int) -> Graph:
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def gnp_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform random recursive tree: vertex ``v`` attaches to a random earlier vertex."""
    return Graph(n, [(rng.randrange(v), v) for v in range(1, n)])


def with_demands(g: Graph, rng: random.Random, t: int = 1, d: int = 1,
                 tmax: int | None = None, dmax: int | None = None) -> DvdInstance:
    """Attach radii then demands, clamping each demand to its ball size."""
    radii = [rng.randint(1, dmax) if dmax else d for _ in range(g.n)]
    raw = [rng.randint(0, tmax) if tmax is not None else t for _ in range(g.n)]
    demands = []
    for v in range(g.n):
        if raw[v] > g.degree(v):
            raw[v] = min(raw[v], len(g.ball(v, radii[v])))
        demands.append(raw[v])
    return DvdInstance(g, demands, radii)


# family -> (positional parameter names, defaults)
FAMILIES: dict[str, tuple[tuple[str, ...], dict]] = {
    "path": (("n",), {}),
    "cycle": (("n",), {}),
    "grid": (("rows", "cols"), {}),
    "gnp": (("n", "p"), {}),
    "star": (("leaves",), {}),
    "tree": (("n",), {}),
    "mq-vd": (("q", "r", "s"), {"mode": "planted"}),
}
_DEMAND_KEYS = ("t", "d", "tmax", "dmax")


def _number(key: str, value):
    if key == "p":
        try:
            p = float(value)
        except (TypeError, ValueError):
            raise InputError(f"p must be a number, got {value!r}") from None
        if not 0.0 <= p <= 1.0:
            raise InputError(f"p must lie in [0, 1], got {p}")
        return p
    if key == "mode":
        return str(value)
    try:
        x = int(value)
    except (TypeError, ValueError):
        raise InputError(f"{key} must be an integer, got {value!r}") from None
    if x < 0:
        raise InputError(f"{key} must be non-negative, got {x}")
    return x


def generate(family: str, params: dict, seed: int = 0) -> Generated:
    """Build one instance of ``family``; ``params`` maps names to values or strings."""
    if family not in FAMILIES:
        raise InputError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    names, defaults = FAMILIES[family]
    allowed = set(names) | set(defaults) | {"seed"}
    if family != "mq-vd":
        allowed |= set(_DEMAND_KEYS)
    unknown = sorted(set(params) - allowed)
    if unknown:
        raise InputError(f"unknown parameter(s) for {family}: {', '.join(unknown)}")
    missing = [k for k in names if k not in params]
    if missing:
        raise InputError(f"{family} needs parameter(s): {', '.join(missing)}")
    values = {**defaults, **{k: _number(k, v) for k, v in params.items()}}
    seed = values.pop("seed", seed)
    rng = random.Random(seed)
    shown = " ".join(f"{k}={values[k]}" for k in sorted(values))
    comments = [f"generated {family} {shown} seed={seed}"]

    if family == "mq-vd":
        mq = mq_random_instance(values["q"], values["r"], values["s"], seed=seed, mode=values["mode"])
        gg = mq_to_vd(mq)
        comments.append(f"k={gg.k}")
        return Generated(gg.instance(), comments, gg)

    for k in ("t", "d"):
        values.setdefault(k, 1)
    if values["d"] < 1:
        raise InputError("d must be >= 1")
    if values.get("dmax") == 0:
        raise InputError("dmax must be >= 1")
    if family == "path":
        g = path_graph(values["n"])
    elif family == "cycle":
        g = cycle_graph(values["n"])
    elif family == "grid":
        g = grid_graph(values["rows"], values["cols"])
    elif family == "star":
        g = star_graph(values["leaves"])
    elif family == "tree":
        g = random_tree(values["n"], rng)
    else:
        g = gnp_graph(values["n"], values["p"], rng)
    inst = with_demands(g, rng, values["t"], values["d"], values.get("tmax"), values.get("dmax"))
    return Generated(inst, comments)
