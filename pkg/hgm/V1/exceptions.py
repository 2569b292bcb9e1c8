"""Error hierarchy shared by the engine, the serializers and the commands.

Everything derives from ``ValueError`` so serializer validation and command
argument parsing can catch one base class.
"""


class HgmError(ValueError):
    """Base class for every domain error raised by hgm."""


class FieldConstructionError(HgmError):
    pass


class DomainError(HgmError):
    pass


class ConsistencyError(DomainError):
    """S**2 does not equal (t-1)/t in the coefficient field."""


class SingularCurveError(DomainError):

    def __init__(self, message, discriminant=None):
        super().__init__(message)
        self.discriminant = discriminant


class ReductionError(HgmError):
    """A rational parameter does not reduce to a usable element mod p."""


class PrecisionError(HgmError):
    pass


class DatumError(HgmError):
    pass


class IntegrityError(HgmError):
    """A computed value violates a Weil or Hasse bound."""


class UnsupportedConfigurationError(HgmError):
    pass


class ConfigurationError(HgmError):
    pass


class SamplingError(HgmError):
    pass


class LatticeError(HgmError):
    """A Gram matrix disagrees with the intersection graph it was built from."""
