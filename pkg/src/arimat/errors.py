"""Exception hierarchy.

``NegativeResult`` subclasses are mathematical answers ("computed: impossible
or not covered"), not misuse; the CLI maps them to exit status 2.
"""


class ArimatError(Exception):
    pass


class ShapeError(ArimatError, ValueError):
    pass


class NonSquare(ShapeError):
    pass


class BadShape(ShapeError):
    pass


class RankDeficient(ShapeError):
    pass


class NonIntegerEntries(ArimatError, ValueError):
    pass


class AllZero(ArimatError, ValueError):
    pass


class OutOfGroundSet(ArimatError, ValueError):
    pass


class TooLarge(ArimatError):
    """An exhaustive enumeration would exceed its configured cap."""


class UnsupportedField(ArimatError, ValueError):
    pass


class InconsistentRatios(ArimatError):
    pass


class EvenKForOddExact(ArimatError, ValueError):
    pass


class LabelledMatroidMismatch(ArimatError, ValueError):
    pass


class HasTorsion(ArimatError, ValueError):
    pass


class LoopEdge(ArimatError, ValueError):
    pass


class ParseError(ArimatError, ValueError):
    pass


class NegativeResult(ArimatError):
    pass


class NotRegular(NegativeResult):
    """The matroid is not regular.

    ``detail`` names what failed (an entry, a minor); ``certificate`` optionally
    carries a GP_2 witness proving a powered arithmetic matroid unrepresentable.
    """

    def __init__(self, message, detail=None, certificate=None):
        super().__init__(message)
        self.detail = detail
        self.certificate = certificate


NonRegular = NotRegular


class NoMultiplicativeBasis(NegativeResult):
    pass
