"""Submajorization, the Marcinkiewicz norm and orbit membership."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import DomainMismatch, InvalidBall, ZeroDenominatorFunction
from .stepfn import (
    INF,
    StepFunction,
    head_integral,
    integral,
    is_inf,
    rearrange,
    tail_value,
)


class BallKind(str, enum.Enum):
    ORBIT = "orbit"
    ORBIT_PRIME = "orbit_prime"
    MARCINKIEWICZ = "marcinkiewicz"


@dataclass(frozen=True)
class BallSpec:
    """Omega(g), Omega'(g) or the unit ball of M_G.

    ORBIT and MARCINKIEWICZ are the same point set; the tag only affects
    reporting.  ORBIT_PRIME requires ``g >= 0`` on a finite domain.
    """

    kind: BallKind
    g: StepFunction

    def __post_init__(self):
        object.__setattr__(self, "kind", BallKind(self.kind))
        if self.g.is_zero():
            raise InvalidBall("g must be nonzero")
        if self.kind is BallKind.ORBIT_PRIME:
            if is_inf(self.g.alpha):
                raise InvalidBall("Omega'(g) needs a finite domain")
            if not self.g.is_nonnegative():
                raise InvalidBall("Omega'(g) needs g >= 0")


def _union_ts(c1, c2) -> list:
    return sorted(set(c1.ts) | set(c2.ts))


def submajorizes(f: StepFunction, g: StepFunction) -> bool:
    """True iff ``int_0^t mu(f) <= int_0^t mu(g)`` for every t > 0."""
    hf, hg = head_integral(f), head_integral(g)
    for t in _union_ts(hf, hg)[1:]:
        if hf(t) > hg(t):
            return False
    return hf.terminal_slope <= hg.terminal_slope


def _mu_key(f: StepFunction) -> tuple:
    # mu(f) up to zero extension: the nonzero pieces plus the tail value.
    h = rearrange(f)
    return tuple(p for p in h.pieces if p[2] != 0 and not is_inf(p[1])), tail_value(f)


def equimeasurable(f: StepFunction, g: StepFunction) -> bool:
    if f.alpha == g.alpha:
        return rearrange(f) == rearrange(g)
    return _mu_key(f) == _mu_key(g)


def marcinkiewicz_norm(f: StepFunction, g: StepFunction):
    """``sup_t int_0^t mu(f) / int_0^t mu(g)``, exact; INF when unbounded.

    The ratio of two affine functions is monotone on every common linear
    segment, so the supremum is a breakpoint value or one of the two limits
    t -> 0+ and t -> inf.
    """
    if g.is_zero():
        raise ZeroDenominatorFunction("g = 0 has no Marcinkiewicz norm")
    hf, hg = head_integral(f), head_integral(g)
    best = hf.initial_slope() / hg.initial_slope()
    ts = _union_ts(hf, hg)
    for t in ts[1:]:
        r = hf(t) / hg(t)
        if r > best:
            best = r
    sf, sg = hf.terminal_slope, hg.terminal_slope
    if sg > 0:
        best = max(best, sf / sg)
    elif sf > 0:
        return INF
    return best


def contains(ball: BallSpec, f: StepFunction) -> bool:
    if f.alpha != ball.g.alpha:
        raise DomainMismatch(f"f lives on [0,{f.alpha}), g on [0,{ball.g.alpha})")
    if ball.kind is BallKind.ORBIT_PRIME:
        if not f.is_nonnegative():
            return False
        if not submajorizes(f, ball.g):
            return False
        return integral(f) == integral(ball.g)
    return submajorizes(f, ball.g)


__all__ = [
    "BallKind",
    "BallSpec",
    "contains",
    "equimeasurable",
    "marcinkiewicz_norm",
    "submajorizes",
]
