"""Error hierarchy shared by every gwmirror module."""


class GWMirrorError(Exception):
    """Base class for all domain errors raised by gwmirror."""


class DimensionMismatchError(GWMirrorError, ValueError):
    """Operands live over projective spaces of different dimension."""


class InvalidSubstitutionError(GWMirrorError, ValueError):
    """A substitution is not of the form q * (unit)."""


class NotInvertibleError(GWMirrorError, ZeroDivisionError):
    """A series or linear factor has no inverse in the ring at hand."""


class NonconvergentExponentialError(GWMirrorError, ValueError):
    """exp(a/hbar) requested for a series with nonzero constant term."""


class PositiveHbarError(GWMirrorError, ValueError):
    """A final result still carries positive powers of hbar."""


class ContractViolationError(GWMirrorError, ArithmeticError):
    """An internal consistency check failed; signals a formula bug."""


class UnsupportedGenusError(GWMirrorError, ValueError):
    pass


class UnsupportedDegreeError(GWMirrorError, ValueError):
    pass


class UnsupportedGeometryError(GWMirrorError, ValueError):
    pass


class ModelMismatchError(GWMirrorError, ValueError):
    """A series does not belong to the embedding model it is pushed through."""


class SingularWeightError(GWMirrorError, ZeroDivisionError):
    """Torus weights hit a vanishing denominator in some graph contribution."""


class MissingDivisorError(GWMirrorError, KeyError):
    pass


class VanishingClassWarning(UserWarning):
    """A characteristic class vanishes for degree reasons."""
