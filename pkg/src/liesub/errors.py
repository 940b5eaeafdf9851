"""Exception types shared across the package."""


class LiesubError(Exception):
    """Base class for all errors raised by this package."""


class NotAnEmbedding(LiesubError):
    """The proposed generator image does not satisfy the minimal polynomial."""


class InvalidCartanMatrix(LiesubError):
    pass


class NotDominant(LiesubError):
    pass


class NotToral(LiesubError):
    """The given elements do not commute pairwise."""


class NotInCartan(LiesubError):
    """A vector expected to lie in the fixed Cartan subalgebra does not."""


class DegenerateRestriction(LiesubError):
    """The invariant form restricts to zero on the given subalgebra."""


class GramMismatch(LiesubError):
    """Ordered conjugacy was asked for tuples with different Gram matrices."""


class Undecided(LiesubError):
    """A conjugacy search exceeded its backtracking budget."""


class NonIntegralEigenvalue(LiesubError):
    """A module weight takes a non-integer value on a candidate element."""


class NotZeroDimensional(LiesubError):
    """A polynomial system has infinitely many solutions."""

    def __init__(self, free_variables):
        self.free_variables = tuple(free_variables)
        super().__init__(f"positive-dimensional ideal, free variables {self.free_variables}")


class BudgetExceeded(LiesubError):
    """A configured computation budget ran out before a decision was reached."""


class DegenerateHPart(LiesubError):
    """The elements of a candidate h-part are linearly dependent."""


class NotAChain(LiesubError):
    """A requested chain has a consecutive pair without an inclusion."""


class UnknownId(LiesubError):
    """A query referenced a class id that is not in the database."""
