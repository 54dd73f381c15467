"""Regression table of the reference examples, used by ``kextreme selftest``."""

from __future__ import annotations

from fractions import Fraction as F

import numpy as np

from .extremality import Witness, gen_witness, k_extreme, verify_witness
from .major import BallSpec, equimeasurable, marcinkiewicz_norm
from .matop import matrix_k_extreme_sufficient
from .oracle import (
    PolyhedralNormSpec,
    face_dimension,
    random_witness_search,
    vector_witness_ok,
)
from .stepfn import INF, StepFunction, make_step, rearrange


def _simplex_point(k: int) -> list:
    return [F(1, k + 1)] * (k + 1) + [F(0)]


def check_l1_example() -> bool:
    """(1/(k+1),...,1/(k+1),0) in l1^{k+2}: not k-extreme, (k+1)-extreme."""
    for k in (2, 3, 4):
        rep = face_dimension(PolyhedralNormSpec("l1", k + 2), _simplex_point(k))
        if rep.face_dim != k or rep.is_k_extreme(k) or not rep.is_k_extreme(k + 1):
            return False
    return True


def check_l1_unit_vector_witness() -> bool:
    """x is the average of e_1..e_{k+1}; u_i = e_{i+1} - x verifies."""
    k = 2
    x = _simplex_point(k)
    spec = PolyhedralNormSpec("l1", k + 2)
    us = []
    for i in range(1, k + 1):
        e = [F(0)] * (k + 2)
        e[i] = F(1)
        us.append([a - b for a, b in zip(e, x)])
    return vector_witness_ok(spec, x, us)


def check_sequence_two_extreme() -> bool:
    spec = PolyhedralNormSpec("l1", 3)
    x = [F(1, 2), F(1, 2), F(0)]
    rep = face_dimension(spec, x)
    none_found = random_witness_search(spec, x, 2, 1000, 0) is None
    return rep.face_dim == 1 and rep.is_k_extreme(2) and none_found


def check_function_space_divergence() -> bool:
    f = StepFunction.indicator(0, 2, 3, F(1, 2))
    g = StepFunction.indicator(0, 1, 3)
    ball = BallSpec("orbit", g)
    if equimeasurable(f, g):
        return False
    for k in range(1, 6):
        v = k_extreme(ball, f, k, want_witness=True)
        if v.k_extreme or v.witness is None or not verify_witness(v.witness):
            return False
    return True


def _sample_gs() -> list:
    return [
        make_step([(0, 1, 2), (1, 3, 1)], 3),
        make_step([(0, 1, F(5, 2)), (1, 2, -1), (2, INF, F(1, 2))], INF),
        StepFunction.const(1, INF),
        make_step([(0, 2, F(1, 3)), (2, 3, 4), (3, 5, 0)], 5),
    ]


def check_mu_g_extreme() -> bool:
    for g in _sample_gs():
        ball = BallSpec("orbit", g)
        for k in (1, 2, 3):
            if not k_extreme(ball, rearrange(g), k).k_extreme:
                return False
        if marcinkiewicz_norm(rearrange(g), g) != 1:
            return False
    return True


def check_orbit_prime() -> bool:
    g = make_step([(0, 1, 3), (1, 2, 1), (2, 4, 0)], 4)
    ball = BallSpec("orbit_prime", g)
    # same distribution, mass moved to the right end
    f = make_step([(0, 2, 0), (2, 3, 1), (3, 4, 3)], 4)
    return all(k_extreme(ball, f, k).k_extreme for k in (1, 2, 3))


def check_rotundity_witness() -> bool:
    f = StepFunction.indicator(3, INF, INF)
    ball = BallSpec("orbit", StepFunction.const(1, INF))
    w = gen_witness(ball, f, 2)
    half = F(1, 2)
    expect = (
        make_step([(0, 1, -half), (1, 2, half), (2, INF, 0)], INF),
        make_step([(0, 1, -half), (1, 2, 0), (2, 3, half), (3, INF, 0)], INF),
    )
    return w.perturbations == expect and verify_witness(w)


def check_rotundity_invalid_when_dependent() -> bool:
    f = StepFunction.indicator(3, INF, INF)
    ball = BallSpec("orbit", StepFunction.const(1, INF))
    u = make_step([(0, 1, F(-1, 2)), (1, 2, F(1, 2)), (2, INF, 0)], INF)
    return not verify_witness(Witness(f, ball, 2, (u, u)))


def check_matrix_sufficiency() -> bool:
    g = make_step([(0, 1, 3), (1, 2, 2), (2, 3, 1)], 3)
    rng = np.random.default_rng(7)
    q1, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    q2, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    A = q1 @ np.diag([1.0, 3.0, 2.0]) @ q2.T
    res = matrix_k_extreme_sufficient(A, BallSpec("orbit", g), 2)
    return bool(res["sufficient"])


CHECKS = [
    ("l1^{k+2} simplex point: face_dim = k for k=2,3,4", check_l1_example),
    ("l1^{k+2} simplex point: unit-vector witness verifies", check_l1_unit_vector_witness),
    ("(1/2,1/2,0) is 2-extreme in l1^3", check_sequence_two_extreme),
    ("(1/2)chi_[0,2) not k-extreme in Omega(chi_[0,1)), k<=5", check_function_space_divergence),
    ("mu(g) is k-extreme in Omega(g) with norm 1", check_mu_g_extreme),
    ("Omega'(g): mu(f)=mu(g), f>=0 is k-extreme", check_orbit_prime),
    ("rotundity witness for chi_(3,inf), k=2", check_rotundity_witness),
    ("dependent perturbations are rejected", check_rotundity_invalid_when_dependent),
    ("matrix with profile mu(g) is certified k-extreme", check_matrix_sufficiency),
]


def run() -> list:
    out = []
    for name, fn in CHECKS:
        try:
            ok = bool(fn())
            detail = ""
        except Exception as e:  # report, never crash the table
            ok, detail = False, f"{type(e).__name__}: {e}"
        out.append((name, ok, detail))
    return out
