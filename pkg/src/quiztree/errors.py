"""Exception types shared across the package."""


class QuiztreeError(Exception):
    """Base class for all errors raised by this package."""


class BadDistribution(QuiztreeError):
    """Weights are negative, do not sum to one, or are otherwise unusable."""


class PreconditionViolated(QuiztreeError):
    """An operation was called outside its documented domain."""


class TreeInvalid(QuiztreeError):
    """A decision tree does not fit the distribution it is used with."""


class SecretNotInTree(QuiztreeError):
    """The requested secret element labels no leaf of the tree."""


class TooLarge(QuiztreeError):
    """The instance exceeds the size limits of an exhaustive operation."""


class ConstantDistribution(QuiztreeError):
    """The distribution is a point mass, so no question can split it."""


class MalformedIndex(QuiztreeError):
    """A packed question index does not decode to a valid question."""


class UnknownSession(QuiztreeError):
    """No live game session has the requested id."""


class WrongState(QuiztreeError):
    """The session cannot accept this action in its current state."""


class InconsistentAnswers(QuiztreeError):
    """The answers given so far rule out every element."""


class BadStrategy(QuiztreeError):
    """The named strategy does not exist or cannot run on this distribution."""


class UnknownFamily(QuiztreeError):
    """The benchmark was asked for a distribution family it does not know."""


class IOFailure(QuiztreeError):
    """Reading or writing a benchmark artifact failed."""
