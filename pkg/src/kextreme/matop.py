"""Square real matrices: singular value profiles and the sufficiency check.

This is the only floating-point module.  Singular values come from a
one-sided (Hestenes) Jacobi sweep; the hand-off to the exact core rounds
them to rationals at an explicit precision.  An independent exact oracle
isolates the roots of the characteristic polynomial of ``A^T A``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainMismatch, NotInBall, PreconditionFailed
from .extremality import k_extreme
from .major import BallSpec, contains, submajorizes
from .stepfn import StepFunction, make_step, rearrange

DEFAULT_TOL = 1e-10
DEFAULT_PRECISION = Fraction(1, 10**9)
CHECK_TOL = 1e-8
MAX_N = 64
MAX_SWEEPS = 60


def as_matrix(rows, max_n: int = MAX_N) -> np.ndarray:
    A = np.array(rows, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise ValueError(f"expected a nonempty square matrix, got shape {A.shape}")
    if A.shape[0] > max_n:
        raise ValueError(f"n = {A.shape[0]} exceeds the bound {max_n}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix entries must be finite")
    return A


@dataclass(frozen=True)
class SingularProfile:
    values: tuple
    tol: float

    def rank(self) -> int:
        top = self.values[0] if self.values else 0.0
        return sum(v > self.tol * max(top, 1.0) for v in self.values)

    def as_array(self) -> np.ndarray:
        return np.array(self.values)


def singular_values(A, tol: float = DEFAULT_TOL) -> SingularProfile:
    """Singular values by row-cyclic one-sided Jacobi rotations.

    Sweeps stop once the off-diagonal part of ``M^T M`` has Frobenius norm
    below ``tol * ||A||^2``.
    """
    M = as_matrix(A).copy()
    n = M.shape[0]
    scale = float(np.sum(M * M))
    if scale == 0.0:
        return SingularProfile(tuple([0.0] * n), tol)
    for _ in range(MAX_SWEEPS):
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                a = M[:, i] @ M[:, i]
                b = M[:, j] @ M[:, j]
                c = M[:, i] @ M[:, j]
                off += c * c
                if c == 0.0:
                    continue
                zeta = (b - a) / (2.0 * c)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
                cs = 1.0 / math.sqrt(1.0 + t * t)
                sn = cs * t
                mi = M[:, i].copy()
                M[:, i] = cs * mi - sn * M[:, j]
                M[:, j] = sn * mi + cs * M[:, j]
        if math.sqrt(off) <= tol * scale:
            break
    s = np.sort(np.sqrt(np.sum(M * M, axis=0)))[::-1]
    return SingularProfile(tuple(float(x) for x in s), tol)


def _round(v: float, precision: Fraction) -> Fraction:
    return round(Fraction(v) / precision) * precision


def mu_of_matrix(
    A, tol: float = DEFAULT_TOL, precision: Fraction = DEFAULT_PRECISION
) -> StepFunction:
    """Unit-width step function on ``[0, n)`` carrying the singular values.

    Values are rounded to integer multiples of ``precision``.
    """
    prof = singular_values(A, tol)
    n = len(prof.values)
    return make_step(
        [(i, i + 1, _round(v, precision)) for i, v in enumerate(prof.values)], n
    )


def _snap(profile: StepFunction, g: StepFunction, slack: Fraction) -> StepFunction:
    targets = sorted({p[2] for p in rearrange(g).pieces} | {Fraction(0)})
    pieces = []
    for s, e, v in profile.pieces:
        near = min(targets, key=lambda t: abs(t - v))
        pieces.append((s, e, near if abs(near - v) <= slack else v))
    return make_step(pieces, profile.alpha)


def matrix_k_extreme_sufficient(
    A,
    ball: BallSpec,
    k: int,
    tol: float = DEFAULT_TOL,
    precision: Fraction = DEFAULT_PRECISION,
) -> dict:
    """Certificate check for k-extremality of A in the matrix ball of ``ball``.

    The profile ``mu(A)`` vanishes at infinity on a finite trace, so whenever
    it is k-extreme in the function ball, A is k-extreme in the matrix ball.
    ``sufficient=False`` only means no certificate; it is not a disproof.
    """
    A = as_matrix(A)
    n = A.shape[0]
    if ball.g.alpha != n:
        raise DomainMismatch(f"matrix profile lives on [0,{n}), g on [0,{ball.g.alpha})")
    raw = mu_of_matrix(A, tol, precision)
    slack = 4 * precision + Fraction(tol) * max(Fraction(1), raw.max_abs())
    profile = _snap(raw, ball.g, slack)
    if not contains(ball, profile):
        raise NotInBall("singular value profile is not in the ball")
    verdict = k_extreme(ball, profile, k)
    if verdict.k_extreme:
        reason = "mu(A) is k-extreme in the function ball and mu(inf, A) = 0"
    elif not verdict.mu_equal:
        reason = "mu_equal fails: mu(A) != mu(g); no certificate (not a disproof)"
    else:
        reason = "mu(A) is not k-extreme in the function ball; no certificate"
    return {
        "sufficient": verdict.k_extreme,
        "reason": reason,
        "mu_equal": verdict.mu_equal,
        "profile": profile,
        "precision": precision,
    }


# -- identities --------------------------------------------------------------------


def _abs_matrix(A: np.ndarray) -> np.ndarray:
    w, V = np.linalg.eigh(A.T @ A)
    return (V * np.sqrt(np.clip(w, 0.0, None))) @ V.T


def _max_diff(p: SingularProfile, q: SingularProfile) -> float:
    return float(np.max(np.abs(p.as_array() - q.as_array())))


def loewner_sandwich(A, B, tol: float = CHECK_TOL) -> bool:
    """``-B <= A <= B`` with A, B symmetric, checked by eigenvalues."""
    A, B = as_matrix(A), as_matrix(B)
    scale = max(1.0, float(np.max(np.abs(B))))
    if not (np.allclose(A, A.T, atol=tol * scale) and np.allclose(B, B.T, atol=tol * scale)):
        return False
    lo = np.linalg.eigvalsh((B - A + (B - A).T) / 2).min()
    hi = np.linalg.eigvalsh((B + A + (B + A).T) / 2).min()
    return lo >= -tol * scale and hi >= -tol * scale


def property_checks(
    A,
    B,
    checks: Sequence[str] = ("1", "3", "4"),
    tol: float = DEFAULT_TOL,
    check_tol: float = CHECK_TOL,
    precision: Fraction = DEFAULT_PRECISION,
) -> dict:
    """Singular value identities on a pair of matrices.

    ``"1"``: mu(|A|) = mu(A).  ``"3"``: if mu((A+B)/2) = mu(A) = mu(B) then
    A = B (skipped when the hypothesis fails).  ``"4"``: -B <= A <= B implies
    mu(A) is submajorized by mu(B); raises PreconditionFailed when the
    sandwich does not hold.
    """
    A, B = as_matrix(A), as_matrix(B)
    if A.shape != B.shape:
        raise PreconditionFailed("A and B must have the same size")
    scale = max(1.0, float(np.max(np.abs(A))), float(np.max(np.abs(B))))
    report: dict = {}
    sa = singular_values(A, tol)
    if "1" in checks:
        r = _max_diff(singular_values(_abs_matrix(A), tol), sa)
        report["abs_invariance"] = {"pass": r <= check_tol * scale, "residual": r}
    if "3" in checks:
        sb = singular_values(B, tol)
        sm = singular_values((A + B) / 2, tol)
        hyp = max(_max_diff(sa, sb), _max_diff(sm, sa)) <= check_tol * scale
        if hyp:
            r = float(np.max(np.abs(A - B)))
            report["midpoint_rigidity"] = {
                "pass": r <= check_tol * scale,
                "skipped": False,
                "residual": r,
            }
        else:
            report["midpoint_rigidity"] = {"pass": True, "skipped": True, "residual": None}
    if "4" in checks:
        if not loewner_sandwich(A, B, check_tol):
            raise PreconditionFailed("need symmetric A, B with -B <= A <= B")
        fa = mu_of_matrix(A, tol, precision)
        fb = mu_of_matrix(B, tol, precision)
        # one rounding unit of slack per value on the dominating side
        fb = make_step([(s, e, v + precision) for s, e, v in fb.pieces], fb.alpha)
        report["weyl"] = {"pass": submajorizes(fa, fb)}
    report["pass"] = all(v["pass"] for v in report.values() if isinstance(v, dict))
    return report


def profile_average_residual(x, parts: Sequence, tol: float = DEFAULT_TOL) -> float:
    """``max |mu(x) - mean(mu(x_i))|`` for a decomposition ``x = mean(x_i)``."""
    sx = singular_values(x, tol).as_array()
    avg = np.mean([singular_values(p, tol).as_array() for p in parts], axis=0)
    return float(np.max(np.abs(sx - avg)))


# -- exact characteristic-polynomial oracle ------------------------------------------


def _poly_trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p


def _poly_eval(p: list, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _poly_deriv(p: list) -> list:
    return _poly_trim([i * c for i, c in enumerate(p)][1:] or [Fraction(0)])


def _poly_divmod(a: list, b: list) -> tuple:
    a = list(a)
    b = _poly_trim(b)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        f = a[-1] / b[-1]
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a = _poly_trim(a)
        if len(a) < len(b) or (len(a) == 1 and a[0] == 0):
            break
    return _poly_trim(q), _poly_trim(a)


def _poly_gcd(a: list, b: list) -> list:
    a, b = _poly_trim(a), _poly_trim(b)
    while any(b):
        _, r = _poly_divmod(a, b)
        a, b = b, r
    return [c / a[-1] for c in a]


def _is_const(p: list) -> bool:
    return len(_poly_trim(p)) == 1


def _is_zero(p: list) -> bool:
    return _is_const(p) and p[0] == 0


def _poly_sub(a: list, b: list) -> list:
    m = max(len(a), len(b))
    a = a + [Fraction(0)] * (m - len(a))
    b = b + [Fraction(0)] * (m - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _squarefree_parts(p: list) -> list:
    """Yun's algorithm: ``[(factor, multiplicity), ...]``."""
    dp = _poly_deriv(p)
    a = _poly_gcd(p, dp)
    b, _ = _poly_divmod(p, a)
    c, _ = _poly_divmod(dp, a)
    d = _poly_sub(c, _poly_deriv(b))
    out = []
    i = 1
    while not _is_const(b):
        a = _poly_gcd(b, d)
        if not _is_const(a):
            out.append((a, i))
        b, _ = _poly_divmod(b, a)
        c, _ = _poly_divmod(d, a)
        d = _poly_sub(c, _poly_deriv(b))
        i += 1
    return out


def _sturm(p: list) -> list:
    seq = [p, _poly_deriv(p)]
    while not _is_const(seq[-1]):
        _, r = _poly_divmod(seq[-2], seq[-1])
        if _is_zero(r):
            break
        seq.append([-c for c in r])
    return seq


def _sign_changes(seq: list, x: Fraction) -> int:
    vals = [v for v in (_poly_eval(p, x) for p in seq) if v != 0]
    return sum((a > 0) != (b > 0) for a, b in zip(vals, vals[1:]))


def charpoly_ata(A) -> list:
    """Exact coefficients (low to high) of ``det(lambda I - A^T A)``.

    Float entries are converted to rationals exactly; Faddeev-LeVerrier.
    """
    A = as_matrix(A)
    n = A.shape[0]
    Q = [[Fraction(float(v)) for v in row] for row in A]
    S = [[sum(Q[k][i] * Q[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        SM = [[sum(S[i][l] * M[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        M = [[SM[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        SM = [[sum(S[i][l] * M[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(SM[i][i] for i in range(n)) / k
    return coeffs


def charpoly_singular_values(A, bits: int = 96) -> list:
    """Singular values as square roots of the exact roots of the char. poly.

    Roots are isolated with Sturm sequences on each square-free factor and
    refined by bisection to width ``bound * 2**-bits``.
    """
    p = charpoly_ata(A)
    bound = sum(abs(c) for c in p[:-1]) + 1  # Cauchy bound
    roots = []
    for factor, mult in _squarefree_parts(p):
        seq = _sturm(factor)
        intervals = [(-bound, bound)]
        found = []
        while intervals:
            lo, hi = intervals.pop()
            cnt = _sign_changes(seq, lo) - _sign_changes(seq, hi)
            if cnt == 0:
                continue
            mid = (lo + hi) / 2
            if cnt == 1 and _poly_eval(factor, hi) == 0:
                found.append(hi)  # exact dyadic root, e.g. 0 for singular A
                continue
            if cnt == 1 and hi - lo <= bound / 2**bits:
                found.append(mid)
                continue
            intervals += [(lo, mid), (mid, hi)]
        roots += [r for r in found for _ in range(mult)]
    roots.sort(reverse=True)
    return [math.sqrt(max(float(r), 0.0)) for r in roots]
