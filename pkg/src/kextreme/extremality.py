"""k-extremality in Omega(g), Omega'(g) and B_{M_G}, with explicit witnesses.

A witness of non-k-extremality of ``f`` is a tuple of linearly independent
perturbations ``u_1..u_k`` with ``f + u_i`` and ``f - sum(u_i)`` all in the
ball.  Witnesses are generated constructively and always re-verified.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ._exact import rank
from .errors import (
    AverageMismatch,
    ConstructionFailed,
    DomainMismatch,
    IsExtreme,
    NotInBall,
)
from .major import BallKind, BallSpec, contains, equimeasurable, marcinkiewicz_norm
from .stepfn import (
    INF,
    StepFunction,
    common_refinement,
    head_integral,
    is_inf,
    make_step,
    pull_back,
    rearrange,
    rearrangement_map,
    tail_value,
)

MAX_SHRINK = 40


@dataclass(frozen=True)
class Witness:
    base: StepFunction
    ball: BallSpec
    k: int
    perturbations: tuple

    def points(self) -> list:
        """The k+1 ball points whose average is ``base``."""
        return list(self.iter_points())

    def iter_points(self):
        us = list(self.perturbations)
        for u in us:
            yield self.base + u
        total = us[0]
        for u in us[1:]:
            total = total + u
        yield self.base - total


@dataclass(frozen=True)
class ExtremalityVerdict:
    k_extreme: bool
    mu_equal: bool
    tail_bound_holds: bool
    on_unit_sphere: bool
    witness: Optional[Witness] = field(default=None)


def _check_k(k: int) -> int:
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    return k


def tail_bound_holds(f: StepFunction) -> bool:
    """``|f| >= mu(inf, f)`` everywhere."""
    t = tail_value(f)
    return all(abs(v) >= t for v in f.values)


def k_extreme(
    ball: BallSpec, f: StepFunction, k: int, want_witness: bool = False
) -> ExtremalityVerdict:
    _check_k(k)
    if not contains(ball, f):
        raise NotInBall("f is not a member of the ball")
    mu_eq = equimeasurable(f, ball.g)
    tb = tail_bound_holds(f)
    on_sphere = marcinkiewicz_norm(f, ball.g) == 1
    if ball.kind is BallKind.ORBIT_PRIME:
        extreme = mu_eq
    else:
        extreme = mu_eq and tb
    w = None
    if want_witness and not extreme:
        w = gen_witness(ball, f, k)
    return ExtremalityVerdict(extreme, mu_eq, tb, on_sphere, w)


# -- verification ---------------------------------------------------------------------


def perturbation_rank(us: Sequence[StepFunction]) -> int:
    _, rows = common_refinement(list(us))
    return rank(rows)


def verify_witness(w: Witness) -> bool:
    us = list(w.perturbations)
    if len(us) != w.k or w.k < 1:
        return False
    try:
        # lazily, so that a failing candidate is rejected after one point
        for p in w.iter_points():
            if not contains(w.ball, p):
                return False
        return perturbation_rank(us) == w.k
    except DomainMismatch:
        return False


# -- generation -----------------------------------------------------------------------


def _bumps(alpha, intervals) -> StepFunction:
    """Step function equal to ``v`` on each disjoint ``(a, b, v)``, else 0."""
    pieces = []
    t = Fraction(0)
    for a, b, v in sorted(intervals, key=lambda x: x[0]):
        if a > t:
            pieces.append((t, a, Fraction(0)))
        pieces.append((a, b, v))
        t = b
    if is_inf(t):
        return make_step(pieces, alpha)
    if t != alpha:
        pieces.append((t, alpha, Fraction(0)))
    return make_step(pieces, alpha)


def _split(a, b, parts: int) -> list:
    w = (b - a) / parts
    return [(a + i * w, a + (i + 1) * w) for i in range(parts)]


def _value_left_of(h: StepFunction, t) -> tuple:
    """``(value, piece_start)`` of h on the piece containing ``t^-``."""
    i = bisect.bisect_left(h.starts, t) - 1
    return h.pieces[i][2], h.pieces[i][0]


def _value_at(h: StepFunction, t) -> Fraction:
    # zero extension past a finite alpha
    if not is_inf(h.alpha) and t >= h.alpha:
        return Fraction(0)
    return h(t)


def _try(ball, f, k, build, shrink_steps=MAX_SHRINK) -> Witness:
    """Call ``build(scale)`` with scale 1, 1/2, 1/4, ... until it verifies."""
    scale = Fraction(1)
    for _ in range(shrink_steps):
        us = build(scale)
        if us is not None:
            w = Witness(f, ball, k, tuple(us))
            if verify_witness(w):
                return w
        scale /= 2
    raise ConstructionFailed("witness failed verification at every scale")


def _interior_witness(ball: BallSpec, f: StepFunction, k: int, norm) -> Witness:
    s0, e0, _ = f.pieces[0]
    length = Fraction(1) if is_inf(e0) else e0
    hg = head_integral(ball.g)
    eps0 = (1 - norm) * hg(length) / length / 2
    parts = _split(Fraction(0), length, k)

    def build(scale):
        eps = eps0 * scale
        return [_bumps(f.alpha, [(a, b, eps)]) for a, b in parts]

    return _try(ball, f, k, build)


def _gap_candidates(h: StepFunction, G: StepFunction) -> list:
    """Constancy pieces of h that meet ``{h < G}``, as construction inputs.

    Each entry is ``(case, t1, t2, c, t0, s)`` with ``s`` the end of the
    initial interval ``{G > c}`` (both functions are decreasing, so ``h < G``
    on ``[t1, min(s, t2))``).
    """
    out = []
    finite = not is_inf(h.alpha)
    for j, (t1, t2, c) in enumerate(h.pieces):
        if G(t1) <= c:
            continue
        s = next((p[0] for p in G.pieces if p[2] <= c), G.alpha)
        last = j == len(h.pieces) - 1
        if is_inf(t2) or (finite and last and c == 0):
            case = "IV"
            t2 = INF
        else:
            case = "I"
        hi = s if is_inf(t2) else (t2 if is_inf(s) else min(s, t2))
        t0 = t1 + 1 if is_inf(hi) else (t1 + hi) / 2
        out.append((case, t1, t2, c, t0, s))
    out.sort(key=lambda x: x[0] != "I")
    return out


def _case_i(h, G, k, t1, t2, c, t0, s):
    """Perturbations of h for a constancy piece [t1, t2) with finite t2."""
    jumps = [c - _value_at(h, t2)]
    if t1 > 0:
        jumps.append(_value_left_of(h, t1)[0] - c)
    eta = min(jumps)
    gap = G(t0) - c
    alpha_ = s if is_inf(s) else min(s, t2)
    g_left, g_start = _value_left_of(G, t2)
    if alpha_ == t2 or g_left >= c:
        # Case I.a
        delta = (t0 - t1) / (2 * k) / 2
        eps = min(gap, eta) / k / 2
    else:
        # Case I.b: G drops below c before t2
        gamma = t2 - max(g_start, t1)
        beta = c - g_left
        delta = min((t0 - t1) / 2, t2 - alpha_, alpha_ - t1, gamma) / k / 2
        eps = min(gap, eta, beta) / k / 2

    def build(scale):
        d, e = delta * scale, eps * scale
        return [
            _bumps(h.alpha, [(t1, t1 + d, -e), (t2 - i * d, t2 - (i - 1) * d, e)])
            for i in range(1, k + 1)
        ]

    return build


def _case_iv(h, G, k, t1, c, t0):
    """Perturbations of h when it is constant (= c) on [t1, inf)."""
    bounds = [G(t0) - c]
    if t1 > 0:
        bounds.append(_value_left_of(h, t1)[0] - c)
    if c > 0:
        bounds.append(c)
    eps = min(bounds) / 2
    delta = (t0 - t1) / k

    def build(scale):
        e = eps * scale
        return [
            _bumps(h.alpha, [(t0 - i * delta, t0 - (i - 1) * delta, -e)])
            for i in range(1, k + 1)
        ]

    return build


def _gap_witness(ball: BallSpec, f: StepFunction, k: int) -> Witness:
    h, G = rearrange(f), rearrange(ball.g)
    mapping = rearrangement_map(f)
    cands = _gap_candidates(h, G)
    if ball.kind is BallKind.ORBIT_PRIME:
        cands = [c for c in cands if c[0] == "I"]
    for case, t1, t2, c, t0, s in cands:
        if case == "I":
            build_h = _case_i(h, G, k, t1, t2, c, t0, s)
        else:
            build_h = _case_iv(h, G, k, t1, c, t0)

        def build(scale, build_h=build_h):
            return [pull_back(u, f, mapping) for u in build_h(scale)]

        try:
            return _try(ball, f, k, build)
        except ConstructionFailed:
            continue
    raise ConstructionFailed("no constancy piece of mu(f) yielded a witness")


def _tail_witness(ball: BallSpec, f: StepFunction, k: int) -> Witness:
    tail = tail_value(f)
    zero = next(((s, e) for s, e, v in f.pieces if v == 0), None)
    if zero is not None:
        a, b = zero
        js = _split(a, b, k + 1)
        step = tail / k

        def build(scale):
            # scale is irrelevant: the rotundity construction is exact
            return [
                _bumps(f.alpha, [(js[0][0], js[0][1], -step), (js[i][0], js[i][1], step)])
                for i in range(1, k + 1)
            ]

        return _try(ball, f, k, build, shrink_steps=1)
    s, e, v = next(p for p in f.pieces if 0 < abs(p[2]) < tail)
    eps0 = min(Fraction(1), (tail - abs(v)) / abs(v))
    qs = _split(s, e, k)

    def build(scale):
        eps = eps0 * scale
        return [_bumps(f.alpha, [(a, b, -eps * v)]) for a, b in qs]

    return _try(ball, f, k, build)


def gen_witness(ball: BallSpec, f: StepFunction, k: int) -> Witness:
    _check_k(k)
    if not contains(ball, f):
        raise NotInBall("f is not a member of the ball")
    mu_eq = equimeasurable(f, ball.g)
    if ball.kind is BallKind.ORBIT_PRIME:
        if mu_eq:
            raise IsExtreme("f is k-extreme in Omega'(g)")
        return _gap_witness(ball, f, k)
    tb = tail_bound_holds(f)
    if mu_eq and tb:
        raise IsExtreme("f is k-extreme")
    norm = marcinkiewicz_norm(f, ball.g)
    if norm < 1:
        return _interior_witness(ball, f, k, norm)
    if not mu_eq:
        return _gap_witness(ball, f, k)
    return _tail_witness(ball, f, k)


# -- four-point perturbation -------------------------------------------------------


def four_point_condition(h: StepFunction, G: StepFunction, s: Sequence) -> bool:
    """Hypotheses of the four-point construction for decreasing h, G.

    Requires strict decreases ``h(s_i) > h(s_{i+1})`` and
    ``int_0^t G > int_0^{s1} h + h(s1)(t - s1)`` on ``[s1, s4]``.  The right
    side minus the (concave) left side is convex, so the endpoints suffice.
    """
    s1, s2, s3, s4 = (Fraction(x) for x in s)
    if not (0 < s1 < s2 < s3 < s4) or s4 >= h.alpha:
        return False
    if not (h(s1) > h(s2) > h(s3) > h(s4)):
        return False
    hh, hg = head_integral(h), head_integral(G)
    base = hh(s1)
    return all(hg(t) > base + h(s1) * (t - s1) for t in (s1, s4))


def four_point_perturbations(h: StepFunction, s: Sequence, k: int) -> list:
    s1, s2, s3, s4 = (Fraction(x) for x in s)
    eps = min(h(s1) - h(s2), h(s3) - h(s4)) / k
    delta = (s3 - s2) / 2
    w = delta / k
    return [
        _bumps(h.alpha, [(s2, s2 + w, -eps), (s3 - i * w, s3 - (i - 1) * w, eps)])
        for i in range(1, k + 1)
    ]


# -- averaged rearrangements ---------------------------------------------------------


def mu_average_check(f: StepFunction, parts: Sequence[StepFunction], ball: BallSpec) -> bool:
    """Whether ``mu(f)`` equals the average of the ``mu(part_i)``.

    ``f`` must be exactly the average of ``parts``; every part must lie in
    the ball.  The outcome is a predicate, not a theorem, once ``mu(f)`` is
    not k-extreme.
    """
    n = len(parts)
    if n == 0:
        raise AverageMismatch("no parts given")
    total = parts[0]
    for p in parts[1:]:
        total = total + p
    if total.scaled(Fraction(1, n)) != f:
        raise AverageMismatch("f is not the average of the parts")
    for p in parts:
        if not contains(ball, p):
            raise NotInBall("a part lies outside the ball")
    mus = [rearrange(p) for p in parts]
    avg = mus[0]
    for m in mus[1:]:
        avg = avg + m
    return rearrange(f) == avg.scaled(Fraction(1, n))
