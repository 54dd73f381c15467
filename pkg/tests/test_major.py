from fractions import Fraction as F

import pytest
from hypothesis import given

from kextreme.errors import DomainMismatch, InvalidBall, ZeroDenominatorFunction
from kextreme.major import (
    BallKind,
    BallSpec,
    contains,
    equimeasurable,
    marcinkiewicz_norm,
    submajorizes,
)
from kextreme.stepfn import INF, StepFunction, cells, head_integral, make_step, rearrange
from strategies import orbit_pairs, same_domain

F34 = StepFunction.indicator(0, 2, 2, F(3, 4))
G12 = make_step([(0, 1, 1), (1, 2, F(1, 2))], 2)


def test_submajorizes_examples():
    assert submajorizes(F34, G12)
    assert not submajorizes(G12, F34)
    assert submajorizes(G12, G12)


def test_equimeasurable_examples():
    f = StepFunction.indicator(0, 2, 3, F(1, 2))
    assert not equimeasurable(f, StepFunction.indicator(0, 1, 3))
    h = make_step([(0, 1, 2), (1, 3, -1)], 3)
    assert equimeasurable(h, -h)
    assert equimeasurable(h, make_step([(0, 2, 1), (2, 3, 2)], 3))


def test_norm_examples():
    f = StepFunction.indicator(0, 1, INF, 2)
    g = StepFunction.indicator(0, 2, INF)
    assert marcinkiewicz_norm(f, g) == 2
    assert marcinkiewicz_norm(rearrange(G12), G12) == 1
    assert marcinkiewicz_norm(StepFunction.const(1, INF), g) == INF
    with pytest.raises(ZeroDenominatorFunction):
        marcinkiewicz_norm(f, StepFunction.const(0, INF))


def test_contains_examples():
    assert contains(BallSpec("orbit", G12), G12)
    assert contains(BallSpec("orbit", G12), F34)
    assert not contains(BallSpec("orbit_prime", G12), -G12)
    with pytest.raises(DomainMismatch):
        contains(BallSpec("orbit", G12), StepFunction.const(1, 3))


def test_ball_validation():
    with pytest.raises(InvalidBall):
        BallSpec("orbit", StepFunction.const(0, 2))
    with pytest.raises(InvalidBall):
        BallSpec("orbit_prime", StepFunction.const(1, INF))
    with pytest.raises(InvalidBall):
        BallSpec("orbit_prime", -G12)
    assert BallSpec("marcinkiewicz", G12).kind is BallKind.MARCINKIEWICZ


@given(same_domain(3))
def test_submajorization_transitive(fs):
    f, g, h = fs
    if submajorizes(f, g) and submajorizes(g, h):
        assert submajorizes(f, h)


@given(same_domain())
def test_mutual_submajorization_is_equimeasurable(fs):
    f, g = fs
    assert (submajorizes(f, g) and submajorizes(g, f)) == equimeasurable(f, g)


@given(orbit_pairs())
def test_orbit_members_have_norm_at_most_one(pair):
    f, g = pair
    assert submajorizes(f, g) and marcinkiewicz_norm(f, g) <= 1


@given(same_domain(3))
def test_head_subadditivity(fs):
    f, h, _ = fs
    a, b, c = head_integral(f + h), head_integral(f), head_integral(h)
    ts = sorted(set(a.ts) | set(b.ts) | set(c.ts))
    assert all(a(t) <= b(t) + c(t) for t in ts)
    assert a.terminal_slope <= b.terminal_slope + c.terminal_slope


@given(same_domain())
def test_weyl_commutative(fs):
    f, h = fs
    h = abs(h) + abs(f)
    # f clipped into [-h, h] cellwise
    cuts, cols = cells(f, h)
    clipped = make_step(
        [(cuts[j], cuts[j + 1], max(-b, min(a, b))) for j, (a, b) in enumerate(cols)], f.alpha
    )
    assert submajorizes(clipped, h)
