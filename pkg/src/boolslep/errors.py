class InvalidInputError(ValueError):
    """Malformed mask, signal length, dimension or parameter."""


class PreconditionError(ValueError):
    """An input violates a mathematical precondition (e.g. not in W_r)."""


class InadmissibleError(ArithmeticError):
    """Diagonal symmetrization needs a nonpositive multiplier."""


class EigenSolveError(ArithmeticError):
    """Small eigenproblem failed; the message carries the matrix."""


class OracleCapError(ValueError):
    """Dense construction refused because 2**n is too large."""
