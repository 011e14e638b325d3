"""Exception hierarchy shared across the package.

Every failure mode that callers are expected to branch on gets its own
class; the CLI maps each class to a distinct exit code.
"""


class MachinPiError(Exception):
    """Base class for all package-specific errors."""


class NegativeOperand(MachinPiError):
    """Square root requested on an interval that is entirely negative.

    Signals precision exhaustion upstream: a quantity known to be
    non-negative came out negative after cancellation.
    """


class DivisorStraddlesZero(MachinPiError):
    """Division requested by an interval containing zero.

    Signals catastrophic cancellation upstream; the caller should retry
    at a higher working scale.
    """


class PrecisionExhausted(MachinPiError):
    """Retries at increasing working precision ran out."""


class AmbiguousRounding(MachinPiError):
    """An interval straddles a rounding boundary; raise precision and retry."""


class EpsilonTooLarge(MachinPiError):
    """The rounding residual is not small relative to the selected rational.

    The construction requires the residual to be well under the value it
    perturbs; we enforce a ratio below 1/10.
    """


class DegenerateSecondTerm(MachinPiError):
    """The first term already accounts for pi/4 (or pi/4 minus a right angle).

    No meaningful second arctangent term exists.  Reported as a distinct
    outcome rather than a failure.
    """


class NotExactlyVerifiable(MachinPiError):
    """Formula has a non-integer coefficient; exact verification needs
    integer exponents."""


class DivergentArgument(MachinPiError):
    """Series argument outside the convergence domain."""


class ZeroArgument(MachinPiError):
    """Series is undefined at argument zero."""


class UnverifiedFormula(MachinPiError):
    """A formula failed exact verification and was not explicitly allowed."""


class InsufficientReference(MachinPiError):
    """Reference constant has fewer validated digits than the measurement
    could produce."""


class RecordParseError(MachinPiError):
    """Record file unreadable: bad JSON, wrong schema, missing fields, or
    sidecar content hash mismatch."""


class DigitCountMismatch(MachinPiError):
    """Stored digit counts disagree with the stored value."""
