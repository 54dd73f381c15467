"""Bit-exact JSON encodings.

Rationals are strings ``"p/q"`` (or ``"p"``), infinity is ``"inf"``.  Decoders
also accept JSON integers; JSON floats are read through their decimal text.
"""

from __future__ import annotations

from fractions import Fraction

from .extremality import ExtremalityVerdict, Witness
from .major import BallSpec
from .oracle import FaceReport, PolyhedralNormSpec, VectorWitness
from .stepfn import StepFunction, is_inf, make_step, to_ext


class MalformedInput(ValueError):
    """Input does not match the documented schema."""


def enc_rat(x) -> str:
    if is_inf(x):
        return "inf"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dec_rat(s) -> Fraction:
    if isinstance(s, bool) or s is None:
        raise MalformedInput(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, float):
        return Fraction(repr(s))
    if isinstance(s, str):
        if s.strip().lower() in ("inf", "+inf", "infinity"):
            raise MalformedInput("infinity is not allowed here")
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise MalformedInput(f"not a rational: {s!r}") from e
    raise MalformedInput(f"not a rational: {s!r}")


def dec_ext(s):
    if isinstance(s, str) and s.strip().lower() in ("inf", "+inf", "infinity"):
        return to_ext("inf")
    return dec_rat(s)


def _get(obj, key):
    if not isinstance(obj, dict):
        raise MalformedInput(f"expected an object with key {key!r}")
    if key not in obj:
        raise MalformedInput(f"missing key {key!r}")
    return obj[key]


def enc_step(f: StepFunction) -> dict:
    return {
        "alpha": enc_rat(f.alpha),
        "pieces": [
            {"start": enc_rat(s), "end": enc_rat(e), "value": enc_rat(v)}
            for s, e, v in f.pieces
        ],
    }


def dec_step(obj) -> StepFunction:
    alpha = dec_ext(_get(obj, "alpha"))
    raw = _get(obj, "pieces")
    if not isinstance(raw, list):
        raise MalformedInput("pieces must be a list")
    pieces = [
        (dec_rat(_get(p, "start")), dec_ext(_get(p, "end")), dec_rat(_get(p, "value")))
        for p in raw
    ]
    return make_step(pieces, alpha)


def enc_ball(b: BallSpec) -> dict:
    return {"kind": b.kind.value, "g": enc_step(b.g)}


def dec_ball(obj) -> BallSpec:
    kind = _get(obj, "kind")
    if kind not in ("orbit", "orbit_prime", "marcinkiewicz"):
        raise MalformedInput(f"unknown ball kind {kind!r}")
    return BallSpec(kind, dec_step(_get(obj, "g")))


def enc_witness(w: Witness) -> dict:
    return {
        "base": enc_step(w.base),
        "ball": enc_ball(w.ball),
        "k": w.k,
        "perturbations": [enc_step(u) for u in w.perturbations],
    }


def dec_witness(obj) -> Witness:
    k = _get(obj, "k")
    if not isinstance(k, int) or isinstance(k, bool):
        raise MalformedInput("k must be an integer")
    us = _get(obj, "perturbations")
    if not isinstance(us, list):
        raise MalformedInput("perturbations must be a list")
    return Witness(
        dec_step(_get(obj, "base")),
        dec_ball(_get(obj, "ball")),
        k,
        tuple(dec_step(u) for u in us),
    )


def enc_verdict(v: ExtremalityVerdict) -> dict:
    out = {
        "k_extreme": v.k_extreme,
        "mu_equal": v.mu_equal,
        "tail_bound_holds": v.tail_bound_holds,
        "on_unit_sphere": v.on_unit_sphere,
    }
    if v.witness is not None:
        out["witness"] = enc_witness(v.witness)
    return out


def enc_norm_spec(s: PolyhedralNormSpec) -> dict:
    out = {"kind": s.kind.value, "n": s.n}
    if s.weights is not None:
        out["weights"] = [enc_rat(w) for w in s.weights]
    return out


def dec_norm_spec(obj) -> PolyhedralNormSpec:
    kind = _get(obj, "kind")
    if kind not in ("l1", "linf", "discrete_marcinkiewicz"):
        raise MalformedInput(f"unknown norm kind {kind!r}")
    n = _get(obj, "n")
    if not isinstance(n, int) or isinstance(n, bool):
        raise MalformedInput("n must be an integer")
    w = obj.get("weights")
    weights = tuple(dec_rat(x) for x in w) if w is not None else None
    return PolyhedralNormSpec(kind, n, weights)


def dec_vector(obj) -> list:
    if not isinstance(obj, list):
        raise MalformedInput("vector must be a list")
    return [dec_rat(x) for x in obj]


def enc_vector(v) -> list:
    return [enc_rat(x) for x in v]


def enc_face(r: FaceReport) -> dict:
    return {
        "norm_value": enc_rat(r.norm_value),
        "active_rank": r.active_rank,
        "face_dim": r.face_dim,
    }


def enc_vector_witness(w: VectorWitness) -> dict:
    return {
        "spec": enc_norm_spec(w.spec),
        "x": enc_vector(w.x),
        "k": w.k,
        "perturbations": [enc_vector(u) for u in w.perturbations],
    }


def dec_matrix(obj) -> list:
    rows = _get(obj, "rows")
    n = obj.get("n", len(rows) if isinstance(rows, list) else None)
    if not isinstance(rows, list) or len(rows) != n:
        raise MalformedInput("rows must be a list of n rows")
    out = []
    for r in rows:
        if not isinstance(r, list) or len(r) != n:
            raise MalformedInput("each row must have n entries")
        out.append([float(x) if not isinstance(x, str) else float(Fraction(x)) for x in r])
    return out
