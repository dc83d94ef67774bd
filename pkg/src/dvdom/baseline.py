"""Exhaustive oracle and greedy approximation for Distance Vector Domination."""
from __future__ import annotations

import math
from itertools import combinations
from typing import Iterable

from .exceptions import RefusalError
from .graph import DvdInstance, Solution

#: largest search space the oracle accepts without ``force=True``
BRUTE_FORCE_LIMIT = 24


def _ball_masks(inst: DvdInstance) -> list[int]:
    masks = []
    for v in range(inst.n):
        m = 0
        for u in inst.ball(v):
            m |= 1 << u
        masks.append(m)
    return masks


def brute_force_min_dvd(inst: DvdInstance, size_cap: int | None = None,
                        candidates: Iterable[int] | None = None, force: bool = False) -> Solution | None:
    """Smallest dominating set by exhaustive search.

    Subsets are tried by increasing size, lexicographically within a size, so
    the returned optimum is deterministic.  ``size_cap`` stops the search
    early (``None`` is returned if nothing of size ``<= size_cap`` works).
    ``candidates`` restricts which vertices may be selected; the result is
    then only optimal within that restriction and ``optimal`` is left False.
    """
    pool = sorted(range(inst.n) if candidates is None else set(candidates))
    if len(pool) > BRUTE_FORCE_LIMIT and not force:
        raise RefusalError(f"exhaustive search over {len(pool)} vertices exceeds the limit of "
                           f"{BRUTE_FORCE_LIMIT}; pass force=True to override")
    masks = _ball_masks(inst)
    # most demanding vertices first: they fail fastest
    needy = sorted((v for v in range(inst.n) if inst.t[v] > 0), key=lambda v: (-inst.t[v], v))
    checks = [(1 << v, masks[v], inst.t[v]) for v in needy]
    top = len(pool) if size_cap is None else min(size_cap, len(pool))
    for k in range(top + 1):
        for combo in combinations(pool, k):
            s = 0
            for v in combo:
                s |= 1 << v
            for bit, mask, need in checks:
                if not s & bit and (mask & s).bit_count() < need:
                    break
            else:
                return Solution(frozenset(combo), "brute", optimal=candidates is None)
    return None


def coverage_potential(inst: DvdInstance, selected: Iterable[int]) -> int:
    """Sum over vertices of ``min(t_v, hits_v)``, a selected vertex counting as fully served.

    Equals ``sum(t)`` exactly when ``selected`` is a valid dominating set.
    """
    s = set(selected)
    total = 0
    for v in range(inst.n):
        if v in s:
            total += inst.t[v]
        else:
            total += min(inst.t[v], len(inst.ball(v) & s))
    return total


def greedy_dvd(inst: DvdInstance, trace: list | None = None) -> Solution:
    """Greedy submodular cover on the coverage potential.

    Each round adds the vertex with the largest potential gain (smallest id
    on ties) until every demand is met.  Sizes stay within ``ln n + 2`` of
    the optimum.  If ``trace`` is a list, the potential after every round is
    appended to it.
    """
    n = inst.n
    t = inst.t
    # reach[u]: vertices whose ball contains u
    reach: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        for u in inst.ball(v):
            reach[u].append(v)
    hits = [0] * n
    chosen = [False] * n
    target = sum(t)
    current = 0
    picked: list[int] = []
    while current < target:
        best, best_gain = -1, 0
        for u in range(n):
            if chosen[u]:
                continue
            gain = t[u] - min(t[u], hits[u])
            for v in reach[u]:
                if not chosen[v] and hits[v] < t[v]:
                    gain += 1
            if gain > best_gain:
                best, best_gain = u, gain
        if best < 0:  # cannot happen on a feasible instance
            raise RuntimeError("greedy made no progress")
        chosen[best] = True
        picked.append(best)
        for v in reach[best]:
            hits[v] += 1
        current += best_gain
        if trace is not None:
            trace.append(current)
    return Solution(frozenset(picked), "greedy", optimal=False)


def greedy_ratio_bound(n: int) -> float:
    """Approximation factor ``ln n + 2`` guaranteed for the greedy."""
    return math.log(n) + 2 if n > 0 else 2.0


def brute_force_decide(inst: DvdInstance, size: int, candidates: Iterable[int] | None = None,
                       force: bool = False) -> frozenset | None:
    """A dominating set of exactly ``size`` vertices drawn from ``candidates``, or ``None``.

    Supersets of dominating sets dominate, so this answers "is there a
    solution of size at most ``size``" whenever the pool has ``size`` vertices.
    """
    pool = sorted(range(inst.n) if candidates is None else set(candidates))
    if len(pool) > BRUTE_FORCE_LIMIT and not force:
        raise RefusalError(f"exhaustive search over {len(pool)} vertices exceeds the limit of "
                           f"{BRUTE_FORCE_LIMIT}; pass force=True to override")
    if size > len(pool):
        return None
    masks = _ball_masks(inst)
    needy = sorted((v for v in range(inst.n) if inst.t[v] > 0), key=lambda v: (-inst.t[v], v))
    checks = [(1 << v, masks[v], inst.t[v]) for v in needy]
    for combo in combinations(pool, size):
        s = 0
        for v in combo:
            s |= 1 << v
        for bit, mask, need in checks:
            if not s & bit and (mask & s).bit_count() < need:
                break
        else:
            return frozenset(combo)
    return None
