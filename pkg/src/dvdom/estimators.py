"""scikit-learn style wrapper around the solvers.

``DominatingSetSolver(algorithm=...).fit(A, t=..., d=...)`` accepts an
adjacency matrix, a :class:`Graph` or a ready :class:`DvdInstance`; the chosen
vertices are exposed like a feature selector's support mask.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .baseline import BRUTE_FORCE_LIMIT
from .exceptions import InputError
from .graph import DvdInstance, Graph
from .mw import DEFAULT_WIDTH_CAP
from .runner import ALGORITHMS, run_algorithm


def check_instance(X, t=None, d=None) -> DvdInstance:
    """Coerce ``X`` into a :class:`DvdInstance`.

    ``X`` may be a ``DvdInstance`` (then ``t``/``d`` must be omitted), a
    ``Graph`` or a square symmetric 0/1 matrix (dense or scipy sparse).
    Missing ``t``/``d`` default to 1.
    """
    if isinstance(X, DvdInstance):
        if t is not None or d is not None:
            raise InputError("t and d are already part of the DvdInstance")
        return X
    if isinstance(X, Graph):
        g = X
    else:
        if hasattr(X, "toarray"):
            X = X.toarray()
        A = np.asarray(X)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise InputError(f"adjacency matrix must be square, got shape {A.shape}")
        A = A != 0
        if A.diagonal().any():
            raise InputError("adjacency matrix has self-loops on the diagonal")
        if (A != A.T).any():
            raise InputError("adjacency matrix is not symmetric")
        rows, cols = np.nonzero(np.triu(A, 1))
        g = Graph(A.shape[0], zip(rows.tolist(), cols.tolist()))
    return DvdInstance(g, 1 if t is None else _vector(t, "t"), 1 if d is None else _vector(d, "d"))


def _vector(x, name):
    if np.isscalar(x):
        return int(x)
    arr = np.asarray(x)
    if arr.ndim != 1 or not np.issubdtype(arr.dtype, np.integer):
        raise InputError(f"{name} must be an integer or a 1-d integer array")
    return arr.tolist()


class DominatingSetSolver(BaseEstimator):
    """Minimum distance vector dominating set as an estimator.

    Parameters mirror the command line: ``algorithm`` is one of
    ``brute, greedy, rd-mw, vd-mw, dvd-mw, vd-tw, rd-tw``.

    Fitted attributes: ``support_`` (boolean mask), ``selected_`` (sorted
    vertex ids), ``size_``, ``width_`` and ``solution_``.
    """

    def __init__(self, algorithm: str = "dvd-mw", width_cap: int = DEFAULT_WIDTH_CAP,
                 size_cap: int = BRUTE_FORCE_LIMIT):
        self.algorithm = algorithm
        self.width_cap = width_cap
        self.size_cap = size_cap

    def fit(self, X, y=None, t=None, d=None):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}")
        inst = check_instance(X, t, d)
        res = run_algorithm(inst, self.algorithm, width_cap=self.width_cap, size_cap=self.size_cap)
        sol = res.solution
        mask = np.zeros(inst.n, dtype=bool)
        mask[sol.sorted()] = True
        self.solution_ = sol
        self.support_ = mask
        self.selected_ = np.array(sol.sorted(), dtype=int)
        self.size_ = sol.size
        self.width_ = sol.width
        self.n_features_in_ = inst.n
        return self

    def fit_predict(self, X, y=None, t=None, d=None):
        """Fit and return the boolean membership mask."""
        return self.fit(X, t=t, d=d).support_.copy()

    def get_support(self, indices: bool = False):
        check_is_fitted(self, "support_")
        return self.selected_.copy() if indices else self.support_.copy()
