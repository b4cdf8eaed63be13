"""Exception hierarchy shared by all modules."""


class ShellpolyError(Exception):
    """Base class for every error raised by the package."""


class InputRangeError(ShellpolyError, ValueError):
    """A numeric parameter lies outside its admissible range."""


class UnsupportedInputError(ShellpolyError, ValueError):
    """Input is well formed but outside what an operation supports."""


class BudgetExceededError(ShellpolyError):
    """An enumeration would exceed its configured budget."""


class MalformedComplexError(ShellpolyError, ValueError):
    """A cell complex, relative complex or cell order is invalid."""


class MalformedPolytopeError(ShellpolyError, ValueError):
    """A polytope description is inconsistent."""


class NonGenericLineError(ShellpolyError, ValueError):
    """A line is parallel to a facet, misses the interior or hits two facets at once."""
