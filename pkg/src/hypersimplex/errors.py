"""Exception hierarchy shared by every module of the package."""


class HyperSimplexError(Exception):
    """Base class for all errors raised by hypersimplex."""


class DimensionMismatch(HyperSimplexError, ValueError):
    """Vectors or matrices of incompatible sizes were combined."""


class DegenerateInput(HyperSimplexError, ValueError):
    """A basis, line or face is degenerate where a nondegenerate one is required."""


class GramMismatch(HyperSimplexError, ValueError):
    """Two sequences were expected to share a Gram matrix and do not."""


class NotSpacelike(HyperSimplexError, ValueError):
    """A hyperplane polar was requested for a vector of non-negative norm."""


class SameHyperplane(HyperSimplexError, ValueError):
    """Two half-spaces have proportional polars."""


class OutsideBall(HyperSimplexError, ValueError):
    """An affine chart point lies outside the closed unit ball."""


class NumericalInconsistency(HyperSimplexError, ArithmeticError):
    """A value left the domain of acosh/asinh by more than rounding allows."""


class NotTotal(HyperSimplexError, ValueError):
    """The vertices of a simplex are linearly dependent."""


class InvalidParameter(HyperSimplexError, ValueError):
    """A scalar parameter lies outside its admissible range."""


class InvalidInput(HyperSimplexError, ValueError):
    """Input data violates a checked precondition."""


class NonConvergence(HyperSimplexError, RuntimeError):
    """The optimizer failed to converge from every start.

    ``best_value`` holds the best objective value that was found, if any.
    """

    def __init__(self, message, best_value=None):
        super().__init__(message)
        self.best_value = best_value
