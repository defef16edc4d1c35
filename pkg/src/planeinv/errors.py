"""Exception types shared across the package.

The hierarchy mirrors how callers need to react:

* bad caller input (shapes, unsupported parameters)  -> ``ValueError`` family
* exact arithmetic that cannot proceed (singular pivot, wrong kernel
  dimension, ...)                                    -> ``DegenerateConfigError`` family
* internal structure violated (a provably-zero entry came out nonzero)
  -> ``ZeroPatternViolation``
"""


class DimensionMismatchError(ValueError):
    """Operands have incompatible shapes."""


class UnsupportedCaseError(ValueError):
    """The pair (n, d) belongs to neither supported case family."""


class CaseMismatchError(ValueError):
    """A case-specific routine was called on a configuration of the other case."""


class ShapeMismatchError(ValueError):
    """Two configurations that should share (n, d, s) do not."""


class SingularMatrixError(ArithmeticError):
    """A matrix that must be invertible is not."""


class RankDeficientError(ArithmeticError):
    """A linear solve has no solution or no unique solution."""


class DegenerateConfigError(ArithmeticError):
    """A configuration fails a genericity requirement of the reduction.

    ``block`` is the 1-based index of the offending subspace when one can be
    identified, else ``None``.
    """

    def __init__(self, message: str, block: int | None = None):
        super().__init__(message)
        self.block = block


class WrongKernelDimension(DegenerateConfigError):
    """An intersection kernel does not have the expected dimension."""

    def __init__(self, message: str, expected: int, actual: int, block: int | None = None):
        super().__init__(message, block=block)
        self.expected = expected
        self.actual = actual


class ZeroPatternViolation(ArithmeticError):
    """An entry that is structurally zero (or structurally equal) is not.

    This never indicates bad input; it means an internal invariant of the
    reduction was broken, so it is deliberately *not* a
    ``DegenerateConfigError``.
    """


class DegenerateSamplingExhausted(RuntimeError):
    """Random sampling failed to hit general position within the retry budget."""
