import numpy as np
import pytest

from kextreme.errors import NotInBall, PreconditionFailed
from kextreme.major import BallSpec
from kextreme.matop import (
    as_matrix,
    charpoly_singular_values,
    matrix_k_extreme_sufficient,
    mu_of_matrix,
    profile_average_residual,
    property_checks,
    singular_values,
)
from kextreme.stepfn import StepFunction, make_step


def _orth(rg, n):
    q, r = np.linalg.qr(rg.normal(size=(n, n)))
    return q * np.sign(np.diag(r))


def test_singular_values_examples():
    assert singular_values(np.eye(3)).values == (1.0, 1.0, 1.0)
    assert np.allclose(singular_values(np.diag([3.0, -1.0, 2.0])).values, (3, 2, 1))
    assert np.allclose(singular_values([[0, 2], [0, 0]]).values, (2, 0))
    assert singular_values(np.zeros((2, 2))).rank() == 0


def test_mu_of_matrix_examples():
    assert mu_of_matrix(np.diag([3.0, 2.0, 1.0])) == make_step(
        [(0, 1, 3), (1, 2, 2), (2, 3, 1)], 3
    )
    assert mu_of_matrix(np.zeros((4, 4))) == StepFunction.const(0, 4)
    A = np.random.default_rng(1).normal(size=(5, 5))
    assert mu_of_matrix(A) == mu_of_matrix(A.T)


def test_as_matrix_validation():
    with pytest.raises(ValueError):
        as_matrix([[1, 2, 3]])
    with pytest.raises(ValueError):
        as_matrix([[np.inf]])


def test_sufficiency_examples():
    g = make_step([(0, 1, 3), (1, 2, 2), (2, 3, 1)], 3)
    ball = BallSpec("orbit", g)
    rg = np.random.default_rng(3)
    A = _orth(rg, 3) @ np.diag([2.0, 1.0, 3.0]) @ _orth(rg, 3)
    assert matrix_k_extreme_sufficient(A, ball, 2)["sufficient"]
    assert matrix_k_extreme_sufficient(np.diag([1.0, 3.0, 2.0]), ball, 2)["sufficient"]
    res = matrix_k_extreme_sufficient(np.diag([2.0, 2.0, 2.0]), ball, 1)
    assert not res["sufficient"] and "mu_equal" in res["reason"]
    with pytest.raises(NotInBall):
        matrix_k_extreme_sufficient(np.diag([4.0, 0, 0]), ball, 1)


def test_property_checks_examples():
    P = np.diag([2.0, 1.0])
    rep = property_checks(P, P)
    assert rep["pass"] and not rep["midpoint_rigidity"]["skipped"]
    A = np.diag([1.0, -1.0])
    assert property_checks(A, np.eye(2), checks=("4",))["weyl"]["pass"]
    c, s = np.cos(0.7), np.sin(0.7)
    U = np.array([[c, -s], [s, c]])
    B0 = np.diag([2.0, 1.0])
    rep = property_checks(B0, U @ B0 @ U.T, checks=("1", "3"))
    assert rep["midpoint_rigidity"]["skipped"] and rep["pass"]
    with pytest.raises(PreconditionFailed):
        property_checks(np.eye(2), np.zeros((2, 2)), checks=("4",))


def test_charpoly_oracle_agrees():
    rg = np.random.default_rng(5)
    for n in (1, 2, 3, 4):
        A = rg.normal(size=(n, n))
        assert np.allclose(singular_values(A).values, charpoly_singular_values(A), atol=1e-8)
    S = np.array([[1.0, 2.0], [2.0, 4.0]])  # rank one
    assert np.allclose(charpoly_singular_values(S), (5.0, 0.0), atol=1e-8)


def test_profile_average_residual():
    A = np.diag([3.0, 1.0])
    assert profile_average_residual(A, [A, A]) == 0.0
    assert profile_average_residual(A, [np.diag([3.0, 0.0]), np.diag([3.0, 2.0])]) == 0.0
    assert profile_average_residual(A, [np.diag([6.0, 1.0]), np.diag([0.0, 1.0])]) > 0
