"""Exception hierarchy.

``InvalidInput`` subclasses map to CLI exit code 2, ``UnsupportedRegime``
subclasses to exit code 3.
"""


class ToricQMError(Exception):
    pass


class InvalidInput(ToricQMError):
    pass


class InvalidFan(InvalidInput):
    pass


class NonSmoothCone(InvalidFan):
    pass


class DanglingWall(InvalidFan):
    pass


class NonPrimitiveRay(InvalidFan):
    pass


class InvalidGeometry(InvalidInput):
    pass


class DegenerateTopDegree(InvalidInput):
    pass


class RingMismatch(ToricQMError):
    pass


class SingularPairing(ToricQMError):
    pass


class ZeroJ(ToricQMError):
    pass


class NonUnitDenominator(ToricQMError):
    pass


class NoTangency(ToricQMError):
    pass


class MeasureViolation(ToricQMError):
    """The reduction produced a leaf that does not decrease the measure."""


class OracleMismatch(ToricQMError):
    """Two independent computations of the same number disagree."""


class UnsupportedRegime(ToricQMError):
    pass


class NotFano(UnsupportedRegime):
    pass


class NotSemipositive(UnsupportedRegime):
    pass


class CapTooSmall(UserWarning):
    """Informational: the degree cap is below every wall class."""
