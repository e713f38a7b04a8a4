"""Exception hierarchy carrying structured witnesses."""

from typing import Any


class QuandleHomologyError(ValueError):
    """Base class for every error raised by the toolkit."""

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.context = context


class InvalidSpecError(QuandleHomologyError):
    """A constructor descriptor, polynomial, group table or file is malformed."""


class AxiomViolation(QuandleHomologyError):
    """A quandle, rack or action axiom fails at a concrete witness."""

    def __init__(self, axiom: str, witness: tuple[int, ...], message: str | None = None):
        super().__init__(
            message or f"axiom '{axiom}' fails at witness {witness}",
            axiom=axiom,
            witness=witness,
        )
        self.axiom = axiom
        self.witness = witness

    def __reduce__(self):
        return self.__class__, (self.axiom, self.witness, str(self))


class TheoryMismatchError(QuandleHomologyError):
    """A theory is incompatible with the pair (X, Y), or degrees disagree."""


class SizeLimitExceeded(QuandleHomologyError):
    """A basis or boundary matrix exceeds the configured column limit."""


class BudgetExceeded(QuandleHomologyError):
    """An enumeration exceeded its permutation budget."""


class NotACycleError(QuandleHomologyError):
    """A chain passed for classification has nonzero boundary."""

    def __init__(self, boundary: Any):
        super().__init__(f"chain is not a cycle, boundary = {boundary}", boundary=boundary)
        self.boundary = boundary

    def __reduce__(self):
        return self.__class__, (self.boundary,)


class ChainMapError(QuandleHomologyError):
    """A map failed the (anti)commutation check with the boundary."""

    def __init__(self, name: str, generator: tuple[int, ...], residual: Any):
        super().__init__(
            f"{name} is not a chain map: residual at {generator} is {residual}",
            generator=generator,
            residual=residual,
        )
        self.name = name
        self.generator = generator
        self.residual = residual

    def __reduce__(self):
        return self.__class__, (self.name, self.generator, self.residual)


class HypothesisError(QuandleHomologyError):
    """An operation's precondition (invariance, extremality, regularity) fails."""


class SNFCheckError(QuandleHomologyError):
    """A Smith normal form failed its exact self-check."""
