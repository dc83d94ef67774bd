"""Solvers for Distance Vector Domination and its special cases."""
from .baseline import brute_force_min_dvd, greedy_dvd
from .exceptions import (
    DvdError,
    FormatError,
    InapplicableError,
    InputError,
    RefusalError,
    SelfCheckError,
)
from .graph import DvdInstance, DominationReport, Graph, Solution, ball, bfs_distances, is_dvd_set
from .mw import dvd_mw_decide, dvd_mw_solve, rd_check, rd_mw_solve, vd_mw_decide, vd_mw_solve
from .tw import rd_tw_solve, vd_tw_solve

__version__ = "0.1.0"

__all__ = [
    "DominationReport",
    "DvdError",
    "DvdInstance",
    "FormatError",
    "Graph",
    "InapplicableError",
    "InputError",
    "RefusalError",
    "SelfCheckError",
    "Solution",
    "ball",
    "bfs_distances",
    "brute_force_min_dvd",
    "dvd_mw_decide",
    "dvd_mw_solve",
    "greedy_dvd",
    "is_dvd_set",
    "rd_check",
    "rd_mw_solve",
    "rd_tw_solve",
    "vd_mw_decide",
    "vd_mw_solve",
    "vd_tw_solve",
]
