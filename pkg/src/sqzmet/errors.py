"""Exception types shared across the package."""


class NumericError(RuntimeError):
    """A formula produced a non-finite intermediate or final value."""


class SingularQfimError(ValueError):
    """The information matrix is singular: the two parameters are not
    jointly identifiable at this point, so the joint variance bound is
    undefined."""


class AllInvalidGridError(RuntimeError):
    """Every point of a scan grid was invalid (e.g. singular)."""
