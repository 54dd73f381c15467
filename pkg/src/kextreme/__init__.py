"""Exact decreasing rearrangements, orbits and k-extreme points."""

from .errors import DomainError
from .extremality import (
    ExtremalityVerdict,
    Witness,
    gen_witness,
    k_extreme,
    mu_average_check,
    verify_witness,
)
from .major import (
    BallKind,
    BallSpec,
    contains,
    equimeasurable,
    marcinkiewicz_norm,
    submajorizes,
)
from .stepfn import (
    INF,
    IntegralCurve,
    StepFunction,
    distribution,
    head_integral,
    make_step,
    rearrange,
    rearrangement_map,
    tail_value,
)

__all__ = [
    "INF",
    "BallKind",
    "BallSpec",
    "DomainError",
    "ExtremalityVerdict",
    "IntegralCurve",
    "StepFunction",
    "Witness",
    "contains",
    "distribution",
    "equimeasurable",
    "gen_witness",
    "head_integral",
    "k_extreme",
    "make_step",
    "marcinkiewicz_norm",
    "mu_average_check",
    "rearrange",
    "rearrangement_map",
    "submajorizes",
    "tail_value",
    "verify_witness",
]

__version__ = "0.1.0"
