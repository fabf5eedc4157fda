"""Exception hierarchy.

Every domain error derives from :class:`FusionCatError` so the command line
front end can map them to exit code 1 and print the class name.
"""


class FusionCatError(Exception):
    """Base class for all domain errors raised by this package."""


# fusion rings
class MalformedRing(FusionCatError, ValueError):
    pass


class RingFormatError(MalformedRing):
    """Syntax error in a fusion-ring text file."""


class NonVerifiedRing(FusionCatError, ValueError):
    pass


class LabelOutOfRange(FusionCatError, IndexError):
    pass


class NonIntegralRing(FusionCatError, ValueError):
    pass


# catalog
class DegenerateBicharacter(FusionCatError, ValueError):
    pass


class LevelTooSmall(FusionCatError, ValueError):
    pass


class UnknownName(FusionCatError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


# center
class GroupTooLarge(FusionCatError, ValueError):
    pass


class NotBicharacter(FusionCatError, ValueError):
    pass


class NotAntisymmetric(FusionCatError, ValueError):
    pass


class NonCoprime(FusionCatError, ValueError):
    pass


class NotQPreserving(FusionCatError, ValueError):
    pass


class UnknownMultiplier(FusionCatError, LookupError):
    pass


class NonPrimeOrder(FusionCatError, ValueError):
    pass


class MetricGroupMismatch(FusionCatError, ValueError):
    pass


# channels
class RingMismatch(FusionCatError, ValueError):
    pass


# spin chains and diagrams
class WindowTooSmall(FusionCatError, ValueError):
    pass


class StrandMismatch(FusionCatError, ValueError):
    pass


class IndexOutOfRange(FusionCatError, IndexError):
    pass


class ZeroLoopParameter(FusionCatError, ValueError):
    pass


class TooManyStrands(FusionCatError, ValueError):
    pass


class SingularQuantumInteger(FusionCatError, ZeroDivisionError):
    pass
