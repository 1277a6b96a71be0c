"""Exception hierarchy shared by every module."""


class TwistedGLError(Exception):
    """Base class for all library errors."""

    code = "error"


class NotPrime(TwistedGLError, ValueError):
    code = "not_prime"


class BadDegree(TwistedGLError, ValueError):
    code = "bad_degree"


class ZeroPolynomial(TwistedGLError, ValueError):
    code = "zero_polynomial"


class NotSquarefree(TwistedGLError, ValueError):
    code = "not_squarefree"


class NotMonic(TwistedGLError, ValueError):
    code = "not_monic"


class SizeMismatch(TwistedGLError, ValueError):
    code = "size_mismatch"


class OutOfRange(TwistedGLError, ValueError):
    code = "out_of_range"


class NonRationalResult(TwistedGLError, ArithmeticError):
    """A cyclotomic sum that should be rational did not reduce to Q."""

    code = "non_rational"


class BudgetExceeded(TwistedGLError, RuntimeError):
    """An enumeration would visit more items than the configured cap."""

    code = "budget_exceeded"


class SingularSystem(TwistedGLError, ArithmeticError):
    code = "singular_system"


class CharTwo(TwistedGLError, ValueError):
    code = "char_two"


class Unsupported(TwistedGLError, ValueError):
    code = "unsupported"


class NotStabilized(TwistedGLError, ArithmeticError):
    code = "not_stabilized"
