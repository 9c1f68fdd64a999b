"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for all errors raised by this package."""


class RingMismatchError(EngineError):
    """Operands live in different ring contexts (or different fields)."""


class ParseError(EngineError):
    """Polynomial text does not conform to the input grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position


class HomogeneityError(EngineError):
    """An ideal generator (or oracle input) is not homogeneous."""


class NotMPrimaryError(EngineError):
    """The ideal does not contain any scanned power of the maximal ideal."""


class ReductionSearchError(EngineError):
    """No reduction was verified within the retry/reduction-number caps.

    This is a computational limit, not a mathematical verdict: the
    candidate may still be a reduction with a larger reduction number.
    """

    def __init__(self, message: str, seeds: tuple = ()):
        super().__init__(message)
        self.seeds = seeds


class StabilizationError(EngineError):
    """The two recorded colon ideals disagree, so the colon formula's
    hypotheses are suspect; both ideals are attached for inspection."""

    def __init__(self, message: str, first, second):
        super().__init__(message)
        self.first = first
        self.second = second


class CoreAgreementError(EngineError):
    """Independently sampled reductions produced different colon ideals."""

    def __init__(self, message: str, cores: tuple = ()):
        super().__init__(message)
        self.cores = cores


class CompleteIntersectionError(EngineError):
    """The radicality check was refused: the generating set is not a
    complete intersection.  A refusal says nothing about radicality."""
