"""One entry point for every solver, with self-verification."""
from __future__ import annotations

import time
from dataclasses import dataclass

from .baseline import BRUTE_FORCE_LIMIT, brute_force_min_dvd, greedy_dvd
from .decomposition.treedec import TreeDecomposition, to_nice
from .exceptions import RefusalError, SelfCheckError
from .graph import DvdInstance, Solution, is_dvd_set
from .mw import DEFAULT_WIDTH_CAP, dvd_mw_solve, rd_mw_solve, vd_mw_solve
from .tw import rd_tw_solve, vd_tw_solve

ALGORITHMS = ("brute", "greedy", "rd-mw", "vd-mw", "dvd-mw", "vd-tw", "rd-tw")


@dataclass
class RunResult:
    solution: Solution
    wall_ms: float


def run_algorithm(inst: DvdInstance, algorithm: str, td: TreeDecomposition | None = None,
                  width_cap: int = DEFAULT_WIDTH_CAP, size_cap: int = BRUTE_FORCE_LIMIT,
                  budget: int | None = None) -> RunResult:
    """Solve ``inst`` with ``algorithm`` and verify the answer.

    ``size_cap`` is the largest vertex count the exhaustive search accepts.
    With ``budget`` set, a result larger than the budget raises
    :class:`RefusalError` (exhaustive search stops at the budget).
    Raises :class:`SelfCheckError` if the solver's set does not dominate.
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    start = time.perf_counter()
    if algorithm == "brute":
        if inst.n > size_cap:
            raise RefusalError(f"exhaustive search over {inst.n} vertices exceeds the size cap {size_cap}")
        sol = brute_force_min_dvd(inst, size_cap=budget, force=True)
        if sol is None:
            raise RefusalError(f"no dominating set of size <= {budget}")
    elif algorithm == "greedy":
        sol = greedy_dvd(inst)
    elif algorithm == "rd-mw":
        sol = rd_mw_solve(inst, width_cap)
    elif algorithm == "vd-mw":
        sol = vd_mw_solve(inst, width_cap)
    elif algorithm == "dvd-mw":
        sol = dvd_mw_solve(inst, width_cap)
    else:
        ntd = to_nice(inst.graph, td) if td is not None else None
        sol = (vd_tw_solve if algorithm == "vd-tw" else rd_tw_solve)(inst, ntd)
    wall_ms = (time.perf_counter() - start) * 1000.0
    report = is_dvd_set(inst, sol.selected)
    if not report.valid:
        raise SelfCheckError(f"{algorithm} returned a set that leaves {len(report.deficiency)} "
                             "vertices under-dominated")
    if budget is not None and sol.size > budget:
        raise RefusalError(f"{algorithm} found size {sol.size}, above the budget {budget}")
    return RunResult(sol, wall_ms)
