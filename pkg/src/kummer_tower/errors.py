"""Exception types shared across the toolkit."""


class KummerError(Exception):
    pass


class CompositeModulus(KummerError):
    pass


class BadOrder(KummerError):
    pass


class NotInImage(KummerError):
    pass


class WildPlace(KummerError):
    pass


class OrderMismatch(KummerError):
    pass


class PrecisionTooLow(KummerError):
    pass


class NotSquarefree(KummerError):
    pass


class NoSolution(KummerError):
    pass


class BoundExceeded(KummerError):
    pass


class NotCoprime(KummerError):
    pass


class EvenNorm(KummerError):
    pass


class PreconditionViolated(KummerError):
    pass


class NotAUnit(KummerError):
    pass


class Ramified(KummerError):
    pass


class NotIntegralAtPlace(KummerError):
    pass


class UnknownCase(KummerError):
    pass


class TwoWildPlaces(KummerError):
    pass


class UnsupportedCase(KummerError):
    pass


class NonIntegral(KummerError):
    pass


class BadCongruence(KummerError):
    pass


class MissingFact(KummerError):
    def __init__(self, missing):
        self.missing = list(missing)
        super().__init__("missing facts: " + ", ".join(str(m) for m in self.missing))
