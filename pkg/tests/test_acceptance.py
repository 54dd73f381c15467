"""Acceptance criteria 1-8, each with its tolerance and wall-clock limit.

Every criterion prints one ``PASS``/``FAIL`` line (also collected into the
pytest terminal summary).  Run directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import os
import sys
import time
from fractions import Fraction as F

import numpy as np

sys.path.insert(0, os.path.dirname(__file__))

from gen import nonzero_step, orbit_member, rand_step, rng, shuffle_pieces  # noqa: E402

from kextreme.errors import FaceTooSmall  # noqa: E402
from kextreme.extremality import (  # noqa: E402
    k_extreme,
    tail_bound_holds,
    verify_witness,
)
from kextreme.major import (  # noqa: E402
    BallSpec,
    contains,
    equimeasurable,
    marcinkiewicz_norm,
    submajorizes,
)
from kextreme.matop import (  # noqa: E402
    charpoly_singular_values,
    property_checks,
    profile_average_residual,
    singular_values,
)
from kextreme.oracle import (  # noqa: E402
    PolyhedralNormSpec,
    construct_face_witness,
    face_dimension,
    norm_eval,
    random_witness_search,
    stepfn_witness_search,
    vector_witness_ok,
)
from kextreme.stepfn import StepFunction, rearrange  # noqa: E402

RESULTS: list = []


def _record(n: int, title: str, limit: float, body) -> None:
    t0 = time.perf_counter()
    err = None
    try:
        detail = body()
    except AssertionError as e:
        detail, err = str(e), e
    elapsed = time.perf_counter() - t0
    ok = err is None and elapsed < limit
    note = detail or ""
    if err is None and not ok:
        note = f"too slow ({elapsed:.2f}s >= {limit}s)"
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}  [{elapsed:.2f}s / {limit}s]"
    if note:
        line += f"  {note}"
    RESULTS.append(line)
    print(line)
    assert err is None, err
    assert elapsed < limit, note


# -- 1 ----------------------------------------------------------------------------


def _c1():
    for k in (2, 3, 4):
        x = [F(1, k + 1)] * (k + 1) + [F(0)]
        spec = PolyhedralNormSpec("l1", k + 2)
        assert norm_eval(spec, x) == 1
        rep = face_dimension(spec, x)
        assert rep.face_dim == k, (k, rep)
        assert not rep.is_k_extreme(k) and rep.is_k_extreme(k + 1)
    return "face_dim = k for k = 2, 3, 4"


def test_criterion_1_l1_simplex_example():
    _record(1, "l1^{k+2} simplex point face dimension", 1.0, _c1)


# -- 2 ----------------------------------------------------------------------------


def _c2():
    spec = PolyhedralNormSpec("l1", 3)
    x = [F(1, 2), F(1, 2), F(0)]
    rep = face_dimension(spec, x)
    assert rep.face_dim == 1 and rep.is_k_extreme(2), rep
    g = StepFunction.indicator(0, 1, 3)
    f = StepFunction.indicator(0, 2, 3, F(1, 2))
    ball = BallSpec("orbit", g)
    assert contains(ball, f)
    for k in range(1, 6):
        v = k_extreme(ball, f, k, want_witness=True)
        assert not v.k_extreme, k
        assert v.witness is not None and verify_witness(v.witness), k
    return "sequence point 2-extreme; step analogue not k-extreme for k <= 5"


def test_criterion_2_sequence_vs_function_space():
    _record(2, "sequence vs function-space divergence", 1.0, _c2)


# -- 3 ----------------------------------------------------------------------------


def _c3():
    n_false = 0
    for i in range(500):
        r = rng("c3", i)
        g = nonzero_step(r)
        f = orbit_member(r, g)
        ball = BallSpec(r.choice(("orbit", "marcinkiewicz")), g)
        k = r.randint(1, 5)
        assert contains(ball, f), i
        v = k_extreme(ball, f, k, want_witness=True)
        expect = equimeasurable(f, g) and tail_bound_holds(f)
        assert v.k_extreme == expect, (i, f, g)
        if not v.k_extreme:
            n_false += 1
            assert verify_witness(v.witness), i
    return f"500 pairs, {n_false} non-extreme with verified witnesses"


def test_criterion_3_equivalence_sweep():
    _record(3, "criterion equivalence sweep", 10.0, _c3)


# -- 4 ----------------------------------------------------------------------------


def _c4():
    cases = 0
    i = 0
    while cases < 100:
        r = rng("c4", i)
        i += 1
        g = nonzero_step(r, max_pieces=5)
        f = shuffle_pieces(r, g)
        ball = BallSpec("orbit", g)
        k = r.randint(1, 3)
        if not k_extreme(ball, f, k).k_extreme:
            continue
        cases += 1
        found = stepfn_witness_search(ball, f, k, trials=1000, seed=i, size=16)
        assert found is None, (i, f, g, found)
    return "100 extreme cases, no grid witness in 1000 trials each"


def test_criterion_4_negative_control():
    _record(4, "random search negative control", 30.0, _c4)


# -- 5 ----------------------------------------------------------------------------


def _c5():
    n_eq = 0
    for i in range(200):
        r = rng("c5", i)
        g = nonzero_step(r, alpha=F(r.randint(1, 10)), nonneg=True)
        mode = r.randrange(3)
        if mode == 0:
            f = shuffle_pieces(r, g, signs=False)
        elif mode == 1:
            f = (shuffle_pieces(r, g, signs=False) + shuffle_pieces(r, g, signs=False)).scaled(
                F(1, 2)
            )
        else:
            total = sum((e - s) * v for s, e, v in g.pieces)
            f = StepFunction.const(total / g.alpha, g.alpha)
        ball = BallSpec("orbit_prime", g)
        assert contains(ball, f), i
        v = k_extreme(ball, f, r.randint(1, 4), want_witness=True)
        eq = equimeasurable(f, g)
        n_eq += eq
        assert v.k_extreme == eq, (i, f, g)
        if not eq:
            assert verify_witness(v.witness), i
    return f"200 cases, {n_eq} equimeasurable"


def test_criterion_5_orbit_prime():
    _record(5, "Omega'(g) criterion", 5.0, _c5)


# -- 6 ----------------------------------------------------------------------------


def _c6():
    for i in range(100):
        g = nonzero_step(rng("c6g", i))
        assert marcinkiewicz_norm(rearrange(g), g) == 1, i
    for i in range(300):
        r = rng("c6t", i)
        g = nonzero_step(r)
        f1 = rand_step(r, alpha=g.alpha)
        f2 = rand_step(r, alpha=g.alpha)
        c = r.choice([F(n, d) for n in (-3, -1, 1, 2, 5) for d in (1, 2, 7)])
        n1, n2 = marcinkiewicz_norm(f1, g), marcinkiewicz_norm(f2, g)
        assert marcinkiewicz_norm(f1.scaled(c), g) == abs(c) * n1, i
        assert marcinkiewicz_norm(f1 + f2, g) <= n1 + n2, i
    for i in range(300):
        r = rng("c6s", i)
        g = nonzero_step(r)
        f = orbit_member(r, g) if r.random() < 0.5 else rand_step(r, alpha=g.alpha)
        assert submajorizes(f, g) == (marcinkiewicz_norm(f, g) <= 1), i
    return "norm(mu(g)) = 1; homogeneity, triangle, ball equivalence"


def test_criterion_6_norm_properties():
    _record(6, "Marcinkiewicz norm properties", 5.0, _c6)


# -- 7 ----------------------------------------------------------------------------


def _orth(rg, n):
    q, r = np.linalg.qr(rg.normal(size=(n, n)))
    return q * np.sign(np.diag(r))


def _c7():
    rg = np.random.default_rng(20260101)
    worst = 0.0
    for _ in range(200):
        n = int(rg.integers(1, 7))
        A = rg.normal(size=(n, n))
        s = singular_values(A).as_array()
        s2 = singular_values(_orth(rg, n) @ A @ _orth(rg, n)).as_array()
        worst = max(worst, float(np.max(np.abs(s - s2))))
    assert worst <= 1e-8, f"unitary invariance residual {worst}"

    for i in range(200):
        n = int(rg.integers(1, 7))
        X = rg.normal(size=(n, n))
        A = (X + X.T) / 2
        w, V = np.linalg.eigh(A)
        P = rg.normal(size=(n, n))
        B = (V * np.abs(w)) @ V.T + P @ P.T * float(rg.uniform(0, 1))
        B = (B + B.T) / 2
        rep = property_checks(A, B, checks=("4",))
        assert rep["weyl"]["pass"], i

    worst_cp = 0.0
    for _ in range(40):
        n = int(rg.integers(1, 5))
        A = rg.normal(size=(n, n))
        if rg.random() < 0.25:
            A[:, -1] = 0.0  # singular case
        s = np.array(singular_values(A).values)
        c = np.array(charpoly_singular_values(A))
        worst_cp = max(worst_cp, float(np.max(np.abs(s - c))))
    assert worst_cp <= 1e-8, f"char-poly oracle residual {worst_cp}"

    worst_avg = 0.0
    for _ in range(50):
        n = int(rg.integers(2, 7))
        k = int(rg.integers(1, 4))
        # a certified extreme point only splits into copies of itself
        A = _orth(rg, n) @ np.diag(np.sort(rg.uniform(0, 3, size=n))[::-1]) @ _orth(rg, n)
        noise = [rg.normal(size=(n, n)) * 1e-13 for _ in range(k)]
        parts = [A + d for d in noise] + [A - sum(noise)]
        worst_avg = max(worst_avg, profile_average_residual(A, parts))
    assert worst_avg <= 1e-8, f"profile average residual {worst_avg}"
    return f"max residuals: unitary {worst:.1e}, charpoly {worst_cp:.1e}, average {worst_avg:.1e}"


def test_criterion_7_matrix_suite():
    _record(7, "matrix suite", 60.0, _c7)


# -- 8 ----------------------------------------------------------------------------


def _sphere_points():
    pts = []
    for i in range(240):
        r = rng("c8", i)
        n = r.randint(1, 4)
        kind = ("l1", "linf", "discrete_marcinkiewicz")[i % 3]
        weights = None
        if kind == "discrete_marcinkiewicz":
            weights = tuple(sorted((F(r.randint(1, 6), r.randint(1, 3)) for _ in range(n)), reverse=True))
        spec = PolyhedralNormSpec(kind, n, weights)
        alphabet = [F(0), F(1), F(-1), F(1, 2), F(2), F(-2, 3)] if r.random() < 0.5 else None
        while True:
            if alphabet:
                x = [r.choice(alphabet) for _ in range(n)]
            else:
                x = [F(r.randint(-9, 9), r.randint(1, 5)) for _ in range(n)]
            if any(x):
                break
        nv = norm_eval(spec, x)
        pts.append((spec, [a / nv for a in x]))
    return pts


def _c8():
    pts = _sphere_points()
    for i, (spec, x) in enumerate(pts):
        rep = face_dimension(spec, x)
        for k in range(1, spec.n + 1):
            try:
                w = construct_face_witness(spec, x, k)
                built = True
                assert vector_witness_ok(spec, x, w.perturbations), (i, k)
            except FaceTooSmall:
                built = False
            assert built == (rep.face_dim >= k), (i, k, rep)
            found = random_witness_search(spec, x, k, trials=500, seed=i)
            if found is not None:
                assert rep.face_dim >= k, (i, k, rep)
    return f"{len(pts)} sphere points, n <= 4"


def test_criterion_8_oracle_consistency():
    _record(8, "oracle internal consistency", 60.0, _c8)


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    sys.exit(0 if all("PASS" in line for line in RESULTS) else 1)
