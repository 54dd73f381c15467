"""Exception hierarchy shared by the core modules and the CLI."""


class DomainError(ValueError):
    """Raised when inputs are well-formed but violate an operation's contract.

    The CLI maps these to exit status 1 with a machine-readable error object.
    """

    code = "domain_error"


class GapOrOverlap(DomainError):
    code = "gap_or_overlap"


class NonPositiveLength(DomainError):
    code = "non_positive_length"


class InfiniteInteriorPiece(DomainError):
    code = "infinite_interior_piece"


class NegativeLambda(DomainError):
    code = "negative_lambda"


class DomainMismatch(DomainError):
    code = "domain_mismatch"


class ZeroDenominatorFunction(DomainError):
    code = "zero_denominator_function"


class InvalidBall(DomainError):
    code = "invalid_ball"


class NotInBall(DomainError):
    code = "not_in_ball"


class IsExtreme(DomainError):
    code = "is_extreme"


class ConstructionFailed(RuntimeError):
    """A generated witness failed re-verification. Always a defect."""

    code = "construction_failed"


class AverageMismatch(DomainError):
    code = "average_mismatch"


class PreconditionFailed(DomainError):
    code = "precondition_failed"


class DimensionMismatch(DomainError):
    code = "dimension_mismatch"


class NotOnSphere(DomainError):
    code = "not_on_sphere"


class FaceTooSmall(DomainError):
    code = "face_too_small"
