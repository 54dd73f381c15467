"""Polyhedral ground truth for discrete symmetric norms.

The unit ball of each supported norm is a polytope, the sign/permutation orbit
of finitely many linear functionals.  A sphere point lies in the relative
interior of the face cut out by the functionals tight at it (every other
functional is strictly slack), so the face dimension is ``n - rank(active)``
and the point is k-extreme exactly when that dimension is below k.
"""

from __future__ import annotations

import enum
import bisect
import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from ._exact import nullspace, rank
from .errors import DimensionMismatch, FaceTooSmall, NotOnSphere
from .stepfn import INF, StepFunction, is_inf, make_step, to_scalar


class NormKind(str, enum.Enum):
    L1 = "l1"
    LINF = "linf"
    DISCRETE_MARCINKIEWICZ = "discrete_marcinkiewicz"


@dataclass(frozen=True)
class PolyhedralNormSpec:
    kind: NormKind
    n: int
    weights: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", NormKind(self.kind))
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.kind is NormKind.DISCRETE_MARCINKIEWICZ:
            if self.weights is None or len(self.weights) != self.n:
                raise ValueError("discrete Marcinkiewicz norm needs n weights")
            w = tuple(to_scalar(x) for x in self.weights)
            if any(x <= 0 for x in w) or any(a < b for a, b in zip(w, w[1:])):
                raise ValueError("weights must be positive and nonincreasing")
            object.__setattr__(self, "weights", w)

    def partial_sums(self) -> list:
        return list(itertools.accumulate(self.weights))


@dataclass(frozen=True)
class FaceReport:
    norm_value: Fraction
    active_rank: int
    face_dim: int

    def is_k_extreme(self, k: int) -> bool:
        return self.face_dim <= k - 1


@dataclass(frozen=True)
class VectorWitness:
    spec: PolyhedralNormSpec
    x: tuple
    k: int
    perturbations: tuple


def _vec(spec: PolyhedralNormSpec, x: Sequence) -> list:
    v = [to_scalar(a) for a in x]
    if len(v) != spec.n:
        raise DimensionMismatch(f"expected {spec.n} coordinates, got {len(v)}")
    return v


def norm_eval(spec: PolyhedralNormSpec, x: Sequence) -> Fraction:
    v = _vec(spec, x)
    a = [abs(t) for t in v]
    if spec.kind is NormKind.L1:
        return sum(a, Fraction(0))
    if spec.kind is NormKind.LINF:
        return max(a)
    a.sort(reverse=True)
    heads = itertools.accumulate(a)
    return max(h / G for h, G in zip(heads, spec.partial_sums()))


def _signs(v: Fraction) -> tuple:
    if v > 0:
        return (1,)
    if v < 0:
        return (-1,)
    return (1, -1)


def active_functionals(spec: PolyhedralNormSpec, x: Sequence):
    """Yield every ball-defining functional attaining value 1 at ``x``.

    Ties among equal ``|x_i|`` are expanded over all admissible index
    subsets, and zero coordinates over both signs.
    """
    v = _vec(spec, x)
    n = spec.n
    if spec.kind is NormKind.L1:
        for pattern in itertools.product(*(_signs(t) for t in v)):
            yield [Fraction(s) for s in pattern]
        return
    if spec.kind is NormKind.LINF:
        for i, t in enumerate(v):
            if abs(t) == 1:
                for s in _signs(t):
                    e = [Fraction(0)] * n
                    e[i] = Fraction(s)
                    yield e
        return
    order = sorted(range(n), key=lambda i: -abs(v[i]))
    a = [abs(v[i]) for i in order]
    for m, G in enumerate(spec.partial_sums(), start=1):
        if sum(a[:m]) != G:
            continue
        thr = a[m - 1]
        forced = [i for i in range(n) if abs(v[i]) > thr]
        tied = [i for i in range(n) if abs(v[i]) == thr]
        for extra in itertools.combinations(tied, m - len(forced)):
            idx = forced + list(extra)
            for pattern in itertools.product(*(_signs(v[i]) for i in idx)):
                e = [Fraction(0)] * n
                for i, s in zip(idx, pattern):
                    e[i] = Fraction(s) / G
                yield e


def _active_basis(spec, x) -> list:
    # keep a spanning subset only; the enumeration can be long under ties
    basis: list = []
    r = 0
    for lam in active_functionals(spec, x):
        if r == spec.n:
            break
        r2 = rank(basis + [lam])
        if r2 > r:
            basis.append(lam)
            r = r2
    return basis


def face_dimension(spec: PolyhedralNormSpec, x: Sequence) -> FaceReport:
    nv = norm_eval(spec, x)
    if nv != 1:
        raise NotOnSphere(f"norm is {nv}, not 1")
    r = len(_active_basis(spec, x))
    return FaceReport(nv, r, spec.n - r)


def _member(spec, y) -> bool:
    return norm_eval(spec, y) <= 1


def vector_witness_ok(spec: PolyhedralNormSpec, x: Sequence, us: Sequence) -> bool:
    """Vector form of the witness check: memberships plus exact rank k."""
    x = _vec(spec, x)
    us = [_vec(spec, u) for u in us]
    if not us or rank(us) != len(us):
        return False
    total = [sum(col, Fraction(0)) for col in zip(*us)]
    if not _member(spec, [a - b for a, b in zip(x, total)]):
        return False
    return all(_member(spec, [a + b for a, b in zip(x, u)]) for u in us)


def construct_face_witness(spec: PolyhedralNormSpec, x: Sequence, k: int) -> VectorWitness:
    report = face_dimension(spec, x)
    if report.face_dim < k:
        raise FaceTooSmall(f"face dimension {report.face_dim} < k = {k}")
    v = _vec(spec, x)
    dirs = nullspace(_active_basis(spec, v), spec.n)[:k]
    dirs = [[c / max(abs(t) for t in d) for c in d] for d in dirs]
    t = Fraction(1)
    # terminates: x is relatively interior to its face, so small steps stay in
    while True:
        us = [[t * c for c in d] for d in dirs]
        if vector_witness_ok(spec, v, us):
            return VectorWitness(spec, tuple(v), k, tuple(tuple(u) for u in us))
        t /= 2


# -- randomized search --------------------------------------------------------------

DIRECTION_ALPHABET = tuple(Fraction(i) for i in (-2, -1, 0, 1, 2))
MAX_SCALE_EXP = 12


def _trial_rng(seed: int, trial: int) -> random.Random:
    # per-trial streams make results independent of trial scheduling
    return random.Random(f"{seed}:{trial}")


def search(
    ok: Callable[[list], bool],
    n: int,
    k: int,
    trials: int,
    seed: int,
    alphabet: Sequence = DIRECTION_ALPHABET,
) -> Optional[list]:
    """First random k-tuple of n-vectors accepted by ``ok``, or None.

    Each perturbation is a random alphabet-valued direction times a dyadic
    scale ``2**-j``.
    """
    for trial in range(trials):
        rng = _trial_rng(seed, trial)
        us = []
        for _ in range(k):
            scale = Fraction(1, 2 ** rng.randint(0, MAX_SCALE_EXP))
            us.append([scale * rng.choice(alphabet) for _ in range(n)])
        if ok(us) and rank(us) == k:
            return us
    return None


def random_witness_search(
    spec: PolyhedralNormSpec, x: Sequence, k: int, trials: int, seed: int
) -> Optional[VectorWitness]:
    v = _vec(spec, x)
    nv = norm_eval(spec, v)
    if nv != 1:
        raise NotOnSphere(f"norm is {nv}, not 1")
    us = search(lambda us: vector_witness_ok(spec, v, us), spec.n, k, trials, seed)
    if us is None:
        return None
    return VectorWitness(spec, tuple(v), k, tuple(tuple(u) for u in us))


# -- step-function adapter ----------------------------------------------------------


def grid_for(f: StepFunction, g: StepFunction, size: int = 16) -> list:
    """``size`` cell boundaries covering ``[0, alpha)``.

    Finite domains are cut uniformly.  On the half-line the grid spans twice
    the last finite breakpoint of f and g, and the final cell runs to infinity.
    """
    if not is_inf(f.alpha):
        return [f.alpha * j / size for j in range(size + 1)]
    finite = [p[0] for p in f.pieces + g.pieces]
    span = 2 * max(finite + [Fraction(1)])
    return [span * j / (size - 1) for j in range(size)] + [INF]


def _grid_step(cuts: list, vals: list) -> StepFunction:
    return make_step([(cuts[j], cuts[j + 1], vals[j]) for j in range(len(vals))], cuts[-1])


class _ScaledOrbit:
    """Integer-scaled membership test for Omega(g) on a fixed cell grid.

    Lengths and values are multiplied by common denominators so the
    rearrangement and the curve comparison run on Python ints.  Used as a
    fast filter only; accepted candidates are re-verified exactly.
    """

    def __init__(self, cuts: list, g: StepFunction, vden: int):
        finite = [c for c in cuts if not is_inf(c)]
        self.lden = math.lcm(*(Fraction(c).denominator for c in finite))
        self.vden = vden
        self.lengths = [
            None if is_inf(b) else int((b - a) * self.lden) for a, b in zip(cuts, cuts[1:])
        ]
        gv = [self._v(g(a)) for a in cuts[:-1]]
        self.gt, self.gh, self.gtail = self._curve(gv)

    def _v(self, x) -> int:
        x = Fraction(x) * self.vden
        assert x.denominator == 1
        return int(x)

    def _curve(self, vals: list) -> tuple:
        tail = abs(vals[-1]) if self.lengths[-1] is None else 0
        mass: dict = {}
        for v, ln in zip(vals, self.lengths):
            a = abs(v)
            if ln is None or a < tail:
                continue
            mass[a] = mass.get(a, 0) + ln
        ts, hs, t, h = [0], [0], 0, 0
        for a in sorted(mass, reverse=True):
            t += mass[a]
            h += a * mass[a]
            ts.append(t)
            hs.append(h)
        return ts, hs, tail

    @staticmethod
    def _height(ts, hs, tail, t) -> tuple:
        """Curve value at ``t`` as an exact ``(numerator, denominator)``."""
        i = bisect.bisect_right(ts, t) - 1
        if i == len(ts) - 1:
            return hs[-1] + tail * (t - ts[-1]), 1
        w = ts[i + 1] - ts[i]
        return hs[i] * w + (hs[i + 1] - hs[i]) * (t - ts[i]), w

    def contains(self, vals: list) -> bool:
        ts, hs, tail = self._curve(vals)
        if tail > self.gtail:
            return False
        gt, gh, gtail = self.gt, self.gh, self.gtail
        # both curves are concave, so breakpoints of either one suffice
        for t, h in zip(ts, hs):
            num, den = self._height(gt, gh, gtail, t)
            if h * den > num:
                return False
        for t, h in zip(gt, gh):
            num, den = self._height(ts, hs, tail, t)
            if num > h * den:
                return False
        return True


def stepfn_witness_search(ball, f: StepFunction, k: int, trials: int, seed: int, size: int = 16):
    """Random witness search for ``f`` in an orbit ball over a fixed grid.

    Returns the perturbations as step functions, or None.
    """
    from .extremality import Witness, verify_witness

    grid = grid_for(f, ball.g, size)
    n = len(grid) - 1

    def exact_ok(us):
        w = Witness(f, ball, k, tuple(_grid_step(grid, u) for u in us))
        return verify_witness(w)

    ok = exact_ok
    if ball.kind.value != "orbit_prime" and f.alpha == ball.g.alpha:
        ok = _fast_filter(f, ball, grid, exact_ok)

    us = search(ok, n, k, trials, seed)
    if us is None:
        return None
    return [_grid_step(grid, u) for u in us]


def _fast_filter(f, ball, grid, exact_ok):
    # integer prefilter; anything it accepts still goes through exact_ok
    cuts = sorted(set(grid) | set(f.starts) | set(ball.g.starts), key=lambda c: (is_inf(c), c))
    dens = [Fraction(v).denominator for v in f.values + ball.g.values]
    vden = math.lcm(*dens, 2**MAX_SCALE_EXP)
    fast = _ScaledOrbit(cuts, ball.g, vden)
    fv = [fast._v(f(a)) for a in cuts[:-1]]
    cell_of = [bisect.bisect_right(grid, a) - 1 for a in cuts[:-1]]

    def ok(us):
        iu = [[fast._v(c) for c in u] for u in us]
        total = [sum(col) for col in zip(*iu)]
        for d in iu + [[-t for t in total]]:
            if not fast.contains([fv[j] + d[cell_of[j]] for j in range(len(fv))]):
                return False
        return exact_ok(us)

    return ok
