"""Exception types shared across the package."""


class DomainError(ValueError):
    """An operation was called outside its mathematical domain."""


class DegenerateSpecializationError(ArithmeticError):
    """The Macaulay extraneous minor vanished for every coordinate change tried."""


class ConvergenceError(ArithmeticError):
    """A fixed-point iteration failed to raise the valuation of its correction."""


class ScopeError(ValueError):
    """The input is outside the configuration the disk analysis handles."""


class InconclusiveError(ArithmeticError):
    """A valuation comparison was not strict at the working precision; increase precision."""


class DegenerateFamilyMemberError(ArithmeticError):
    """The bitangent resultant dropped below degree 27."""
