"""Exception hierarchy shared by every module."""


class THError(Exception):
    """Base class for all library errors."""


class FieldError(THError, ValueError):
    """Malformed field spec, unparsable scalar, or out-of-range prime."""


class FieldMismatchError(THError, TypeError):
    """Operands belong to different fields."""


class DimensionError(THError, ValueError):
    """Shapes of operands are incompatible."""


class SingularMatrixError(THError, ArithmeticError):
    """Inverse requested for a singular matrix."""


class UnsupportedFieldError(THError):
    """The operation cannot be carried out over this field (root scan too large)."""


class InvalidParameterArrayError(THError, ValueError):
    """A parameter array violates one of the existence conditions."""


class PreconditionError(THError, ValueError):
    """Input does not satisfy a documented precondition."""


class StructuralInconsistency(THError):
    """An identity that must hold exactly did not.

    Raised when a computed object fails its own postconditions. With exact
    arithmetic this always indicates a bug or an invalid input object.
    """
