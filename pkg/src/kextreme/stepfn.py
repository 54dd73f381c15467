"""Exact step functions on [0, alpha) and their decreasing rearrangements.

All scalars are :class:`fractions.Fraction`.  The right endpoint ``alpha`` and
piece ends may additionally be :data:`INF`.  Pieces are half-open
``[start, end)`` and a :class:`StepFunction` is always kept in canonical form
(adjacent equal values merged), so structural equality is function equality.
"""

from __future__ import annotations

import bisect
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    DomainMismatch,
    GapOrOverlap,
    InfiniteInteriorPiece,
    NegativeLambda,
    NonPositiveLength,
)

INF = math.inf

Scalar = Fraction
Ext = Union[Fraction, float]  # float only ever holds INF
Piece = tuple  # (start: Fraction, end: Ext, value: Fraction)


def is_inf(x) -> bool:
    return isinstance(x, float) and x == INF


def to_scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"scalar must be finite, got {x!r}")
        return Fraction(x)
    if isinstance(x, str) and x.strip().lower() in ("inf", "+inf", "infinity"):
        raise ValueError("infinity is not a scalar")
    return Fraction(x)


def to_ext(x) -> Ext:
    if is_inf(x):
        return INF
    if isinstance(x, str) and x.strip().lower() in ("inf", "+inf", "infinity"):
        return INF
    return to_scalar(x)


def _shift(x: Ext, d: Fraction) -> Ext:
    return INF if is_inf(x) else x + d


def _length(a: Fraction, b: Ext) -> Ext:
    return INF if is_inf(b) else b - a


@dataclass(frozen=True)
class StepFunction:
    """Finitely-piecewise-constant function on ``[0, alpha)``.

    Build instances with :func:`make_step` (or the helpers below); the
    constructor itself does not validate.
    """

    alpha: Ext
    pieces: tuple

    # -- construction helpers -------------------------------------------------
    @classmethod
    def const(cls, value, alpha) -> "StepFunction":
        alpha = to_ext(alpha)
        return make_step([(0, alpha, value)], alpha)

    @classmethod
    def from_values(cls, values: Sequence, width=1, alpha=None) -> "StepFunction":
        """Unit-width (or ``width``) pieces carrying ``values`` left to right.

        When ``alpha`` is INF the last value extends to infinity.
        """
        width = to_scalar(width)
        vals = [to_scalar(v) for v in values]
        pieces = [(i * width, (i + 1) * width, v) for i, v in enumerate(vals)]
        if alpha is not None and is_inf(to_ext(alpha)):
            s, _, v = pieces[-1]
            pieces[-1] = (s, INF, v)
            return make_step(pieces, INF)
        end = len(vals) * width
        if alpha is not None and to_ext(alpha) != end:
            pieces.append((end, to_ext(alpha), Fraction(0)))
            end = to_ext(alpha)
        return make_step(pieces, end)

    @classmethod
    def indicator(cls, a, b, alpha, value=1) -> "StepFunction":
        """``value`` on [a, b), zero elsewhere on [0, alpha)."""
        a, b, alpha = to_scalar(a), to_ext(b), to_ext(alpha)
        pieces = []
        if a > 0:
            pieces.append((Fraction(0), a, Fraction(0)))
        pieces.append((a, b, to_scalar(value)))
        if b != alpha:
            pieces.append((b, alpha, Fraction(0)))
        return make_step(pieces, alpha)

    # -- evaluation -------------------------------------------------------------
    @property
    def starts(self) -> list:
        return [p[0] for p in self.pieces]

    @property
    def values(self) -> list:
        return [p[2] for p in self.pieces]

    def __call__(self, t) -> Fraction:
        t = to_scalar(t)
        if t < 0 or t >= self.alpha:
            raise ValueError(f"t={t} outside [0, {self.alpha})")
        i = bisect.bisect_right(self.starts, t) - 1
        return self.pieces[i][2]

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.values)

    def max_abs(self) -> Fraction:
        return max(abs(v) for v in self.values)

    # -- arithmetic -------------------------------------------------------------
    def __neg__(self) -> "StepFunction":
        return StepFunction(self.alpha, tuple((s, e, -v) for s, e, v in self.pieces))

    def __abs__(self) -> "StepFunction":
        return make_step([(s, e, abs(v)) for s, e, v in self.pieces], self.alpha)

    def scaled(self, c) -> "StepFunction":
        c = to_scalar(c)
        return make_step([(s, e, c * v) for s, e, v in self.pieces], self.alpha)

    def __add__(self, other: "StepFunction") -> "StepFunction":
        return combine(lambda a, b: a + b, self, other)

    def __sub__(self, other: "StepFunction") -> "StepFunction":
        return combine(lambda a, b: a - b, self, other)

    def __mul__(self, c) -> "StepFunction":
        return self.scaled(c)

    __rmul__ = __mul__

    def __str__(self) -> str:
        parts = ", ".join(f"[{s},{e}):{v}" for s, e, v in self.pieces)
        return f"Step(alpha={self.alpha}; {parts})"


def make_step(pieces: Iterable, alpha) -> StepFunction:
    """Validate raw ``(start, end, value)`` triples and return canonical form."""
    alpha = to_ext(alpha)
    if not is_inf(alpha) and alpha <= 0:
        raise NonPositiveLength(f"alpha must be positive, got {alpha}")
    raw = [(to_scalar(s), to_ext(e), to_scalar(v)) for s, e, v in pieces]
    if not raw:
        raise GapOrOverlap("no pieces given")
    raw.sort(key=lambda p: p[0])
    for i, (s, e, _) in enumerate(raw):
        if is_inf(e) and i != len(raw) - 1:
            raise InfiniteInteriorPiece(f"piece starting at {s} has infinite end")
        if e <= s:
            raise NonPositiveLength(f"piece [{s},{e}) has non-positive length")
    if raw[0][0] != 0:
        raise GapOrOverlap(f"first piece starts at {raw[0][0]}, not 0")
    for (s0, e0, _), (s1, _, _) in zip(raw, raw[1:]):
        if e0 != s1:
            raise GapOrOverlap(f"pieces [{s0},{e0}) and [{s1},...) do not abut")
    if raw[-1][1] != alpha:
        if is_inf(raw[-1][1]):
            raise InfiniteInteriorPiece("infinite piece on a finite domain")
        raise GapOrOverlap(f"pieces end at {raw[-1][1]}, domain ends at {alpha}")
    return _merged(raw, alpha)


def _merged(raw: list, alpha) -> StepFunction:
    # trusted path: raw already tiles [0, alpha) in order
    merged = [raw[0]]
    for s, e, v in raw[1:]:
        ps, _, pv = merged[-1]
        if pv == v:
            merged[-1] = (ps, e, v)
        else:
            merged.append((s, e, v))
    return StepFunction(alpha, tuple(merged))


def cells(*fs: StepFunction) -> tuple[list, list]:
    """Common refinement: ``(cuts, columns)``.

    ``cuts`` is the list of cell boundaries ``[0, b1, ..., alpha]``;
    ``columns[j]`` is the list of values of each ``f`` on cell ``j``.
    """
    alpha = fs[0].alpha
    for f in fs[1:]:
        if f.alpha != alpha:
            raise DomainMismatch(f"domains [0,{alpha}) and [0,{f.alpha}) differ")
    starts = sorted({s for f in fs for s in f.starts})
    cols = []
    ptr = [0] * len(fs)
    for c in starts:
        row = []
        for i, f in enumerate(fs):
            p = ptr[i]
            while p + 1 < len(f.pieces) and f.pieces[p + 1][0] <= c:
                p += 1
            ptr[i] = p
            row.append(f.pieces[p][2])
        cols.append(row)
    return starts + [alpha], cols


def combine(op, *fs: StepFunction) -> StepFunction:
    cuts, cols = cells(*fs)
    pieces = [(cuts[j], cuts[j + 1], op(*cols[j])) for j in range(len(cols))]
    return _merged(pieces, cuts[-1])


def common_refinement(fs: Sequence[StepFunction]) -> tuple[list, list]:
    """Value vectors of each function over the shared cells (one row per f)."""
    cuts, cols = cells(*fs)
    return cuts, [[col[i] for col in cols] for i in range(len(fs))]


# -- measure-theoretic operations ---------------------------------------------------


def distribution(f: StepFunction, lam) -> Ext:
    """Lebesgue measure of ``{|f| > lam}``."""
    lam = to_scalar(lam)
    if lam < 0:
        raise NegativeLambda(f"lambda must be >= 0, got {lam}")
    total = Fraction(0)
    for s, e, v in f.pieces:
        if abs(v) > lam:
            if is_inf(e):
                return INF
            total += e - s
    return total


def tail_value(f: StepFunction) -> Fraction:
    """``lim_{t->inf} mu(t, f)``; zero on finite domains."""
    if not is_inf(f.alpha):
        return Fraction(0)
    return abs(f.pieces[-1][2])


def rearrange(f: StepFunction) -> StepFunction:
    """Decreasing right-continuous rearrangement of ``|f|`` on ``[0, alpha)``."""
    tail = tail_value(f)
    mass: dict = defaultdict(Fraction)
    for s, e, v in f.pieces:
        a = abs(v)
        if a < tail:
            continue  # finite measure below the tail value vanishes at infinity
        mass[a] = mass[a] + _length(s, e)
    pieces = []
    t = Fraction(0)
    for a in sorted(mass, reverse=True):
        ln = mass[a]
        end = INF if is_inf(ln) else t + ln
        pieces.append((t, end, a))
        t = end
    return make_step(pieces, f.alpha)


def is_decreasing(f: StepFunction) -> bool:
    vals = f.values
    return all(v >= 0 for v in vals) and all(a >= b for a, b in zip(vals, vals[1:]))


def integral(f: StepFunction) -> Ext:
    """Signed integral over ``[0, alpha)``; +-INF when it diverges."""
    total = Fraction(0)
    for s, e, v in f.pieces:
        if is_inf(e):
            if v > 0:
                return INF
            if v < 0:
                return -INF
            continue
        total += (e - s) * v
    return total


@dataclass(frozen=True)
class IntegralCurve:
    """Concave piecewise-linear ``t -> int_0^t mu(f)``.

    ``breakpoints`` start at ``(0, 0)``; past the last breakpoint the curve
    continues linearly with ``terminal_slope``.
    """

    breakpoints: tuple
    terminal_slope: Fraction

    @property
    def ts(self) -> list:
        return [t for t, _ in self.breakpoints]

    def __call__(self, t) -> Fraction:
        t = to_scalar(t)
        bps = self.breakpoints
        if t >= bps[-1][0]:
            t0, v0 = bps[-1]
            return v0 + self.terminal_slope * (t - t0)
        i = bisect.bisect_right(self.ts, t) - 1
        (t0, v0), (t1, v1) = bps[i], bps[i + 1]
        return v0 + (v1 - v0) * (t - t0) / (t1 - t0)

    def slopes(self) -> list:
        bps = self.breakpoints
        out = [(v1 - v0) / (t1 - t0) for (t0, v0), (t1, v1) in zip(bps, bps[1:])]
        return out + [self.terminal_slope]

    def initial_slope(self) -> Fraction:
        return self.slopes()[0]


def head_integral(f: StepFunction) -> IntegralCurve:
    h = rearrange(f)
    bps = [(Fraction(0), Fraction(0))]
    acc = Fraction(0)
    for s, e, v in h.pieces:
        if is_inf(e):
            break
        acc += (e - s) * v
        bps.append((e, acc))
    return IntegralCurve(tuple(bps), tail_value(f))


# -- measure-preserving correspondence ---------------------------------------------


@dataclass(frozen=True)
class MapEntry:
    """Piece ``source`` of f lands on slot ``target`` of rearrange(f).

    ``target`` is None for pieces whose modulus lies strictly below the tail
    value: on an infinite domain that finite mass is pushed past every slot.
    """

    source: tuple
    target: tuple | None
    sign: int


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def rearrangement_map(f: StepFunction) -> list[MapEntry]:
    tail = tail_value(f)
    groups: dict = defaultdict(list)
    dropped = []
    for s, e, v in f.pieces:
        if abs(v) < tail:
            dropped.append(MapEntry((s, e), None, _sign(v)))
        else:
            groups[abs(v)].append((s, e, v))
    out = []
    t = Fraction(0)
    for a in sorted(groups, reverse=True):
        for s, e, v in groups[a]:
            ln = _length(s, e)
            end = INF if is_inf(ln) else t + ln
            out.append(MapEntry((s, e), (t, end), _sign(v)))
            t = end
    return out + dropped


def _slice(u: StepFunction, a: Fraction, b: Ext) -> list:
    out = []
    for s, e, v in u.pieces:
        lo = max(s, a)
        hi = b if is_inf(e) else (e if is_inf(b) else min(e, b))
        if lo < hi:
            out.append((lo, hi, v))
    return out


def pull_back(u: StepFunction, f: StepFunction, mapping=None) -> StepFunction:
    """Transport a perturbation of ``rearrange(f)`` onto ``f``.

    On each source piece the transported values are multiplied by the sign of
    f there (+1 where f vanishes), so ``|f + pull_back(u)|`` is a measure
    preserving image of ``|rearrange(f) + u|``.
    """
    if mapping is None:
        mapping = rearrangement_map(f)
    if u.alpha != f.alpha:
        raise DomainMismatch("perturbation and base live on different domains")
    pieces = []
    for m in mapping:
        a, b = m.source
        if m.target is None:
            pieces.append((a, b, Fraction(0)))
            continue
        c, d = m.target
        sgn = m.sign or 1
        shift = a - c
        for s, e, v in _slice(u, c, d):
            pieces.append((s + shift, _shift(e, shift), sgn * v))
    return make_step(pieces, f.alpha)
