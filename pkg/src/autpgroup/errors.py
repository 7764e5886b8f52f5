"""Exception hierarchy shared by every module."""


class AutGroupError(Exception):
    """Base class for all errors raised by this package."""


class NotOddPrime(AutGroupError):
    pass


class EmptyExponents(AutGroupError):
    pass


class BudgetExceeded(AutGroupError):
    def __init__(self, message, count=None, node=None):
        super().__init__(message)
        self.count = count
        self.node = node


class AmbientMismatch(AutGroupError):
    pass


class IllFormed(AutGroupError):
    pass


class NotInvertible(AutGroupError):
    pass


class NotInvolution(AutGroupError):
    pass


class NotExtreme(AutGroupError):
    pass


class NotCommuting(AutGroupError):
    pass


class NeitherSideContains(AutGroupError):
    """Raised when a commuting pair fails the containment dichotomy.

    This cannot happen for valid inputs, so seeing it means a bug upstream.
    """


class PreconditionViolated(AutGroupError):
    pass


class OrderViolation(AutGroupError):
    pass


class NotEncoder(AutGroupError):
    pass


class FormulaError(AutGroupError):
    pass


class FormulaSyntaxError(FormulaError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownPrimitive(FormulaError):
    pass


class ArityMismatch(FormulaError):
    pass


class DuplicateName(FormulaError):
    pass


class UnboundVariable(FormulaError):
    pass
