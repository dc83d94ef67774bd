import numpy as np
import pytest
from scipy import sparse
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from dvdom import DvdInstance, InputError, brute_force_min_dvd
from dvdom.estimators import DominatingSetSolver, check_instance

from conftest import cycle, path

C6 = np.array([[1 if abs(i - j) in (1, 5) else 0 for j in range(6)] for i in range(6)])


def test_check_instance_inputs():
    inst = check_instance(C6, t=2)
    assert inst.graph == cycle(6) and inst.t == (2,) * 6
    assert check_instance(sparse.csr_matrix(C6)).graph == cycle(6)
    assert check_instance(cycle(6), d=np.array([1, 2, 1, 2, 1, 2])).d == (1, 2, 1, 2, 1, 2)
    same = DvdInstance(path(3))
    assert check_instance(same) is same


@pytest.mark.parametrize("bad", [np.zeros((2, 3)), np.eye(3), np.array([[0, 1], [0, 0]])])
def test_check_instance_rejects(bad):
    with pytest.raises(InputError):
        check_instance(bad)


def test_check_instance_rejects_double_spec():
    with pytest.raises(InputError):
        check_instance(DvdInstance(path(3)), t=1)


def test_fit_and_support():
    est = DominatingSetSolver(algorithm="vd-tw").fit(C6, t=2)
    opt = brute_force_min_dvd(DvdInstance(cycle(6), t=2)).size
    assert est.size_ == opt == est.get_support().sum()
    assert list(est.get_support(indices=True)) == list(np.flatnonzero(est.support_))


def test_fit_predict_mask():
    mask = DominatingSetSolver(algorithm="dvd-mw").fit_predict(C6, d=2)
    assert mask.dtype == bool and mask.sum() == 2


def test_params_and_clone():
    est = DominatingSetSolver(algorithm="greedy", width_cap=5)
    assert est.get_params() == {"algorithm": "greedy", "width_cap": 5, "size_cap": 24}
    assert clone(est).get_params() == est.get_params()


def test_not_fitted_and_bad_algorithm():
    with pytest.raises(NotFittedError):
        DominatingSetSolver().get_support()
    with pytest.raises(ValueError):
        DominatingSetSolver(algorithm="nope").fit(C6)
