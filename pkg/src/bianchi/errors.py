"""Exception hierarchy shared by the library and the command line front end."""


class BianchiError(Exception):
    """Base class for all errors raised by :mod:`bianchi`."""


class SingularMatrixError(BianchiError, ValueError):
    """A group element was requested from a matrix with zero determinant."""


class JacobiViolation(BianchiError):
    """The bracket does not satisfy the Jacobi identity.

    ``components`` holds the three components of J_C(e1, e2, e3).
    """

    def __init__(self, components, message=None):
        self.components = tuple(components)
        if message is None:
            from .scalar import format_scalar

            shown = ", ".join(format_scalar(c) for c in self.components)
            message = f"Jacobi identity fails: J(e1,e2,e3) = ({shown})"
        super().__init__(message)


class ModeMismatch(BianchiError, ValueError):
    """A type, value or operation is not available in the requested field mode."""


class PreconditionError(BianchiError, ValueError):
    """An operation was called outside its documented domain."""
