"""Exception hierarchy shared by every module of the workbench."""


class WorkbenchError(Exception):
    """Base class for all errors raised by affine_growth."""


class ParseError(WorkbenchError, ValueError):
    pass


class NonMonic(WorkbenchError, ValueError):
    pass


class EmptyModulus(WorkbenchError, ValueError):
    pass


class MixedParents(WorkbenchError, TypeError):
    pass


class ZeroInput(WorkbenchError, ZeroDivisionError):
    pass


class ZeroDivisor(WorkbenchError, ZeroDivisionError):
    """The element shares a nontrivial factor with the modulus."""


class FunctionFieldUnsupported(WorkbenchError):
    pass


class RequiresField(WorkbenchError):
    """A predicate that is only meaningful when the modulus is irreducible."""


class IndexOutOfRange(WorkbenchError, IndexError):
    pass


class NotHomothety(WorkbenchError, ValueError):
    pass


class NotTwoHomotheties(NotHomothety):
    pass


class EqualFixedPoints(WorkbenchError, ValueError):
    pass


class PlaceRingMismatch(WorkbenchError, ValueError):
    pass


class PreconditionError(WorkbenchError, ValueError):
    pass


class BudgetExhausted(WorkbenchError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class MemoryBudget(BudgetExhausted):
    pass


class NormFactorizationBudget(BudgetExhausted):
    pass


class NotFoundWithinBound(WorkbenchError):
    pass


class DegreeBudget(WorkbenchError):
    pass


class ZeroConstantTerm(WorkbenchError, ValueError):
    pass
