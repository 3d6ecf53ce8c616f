"""Exception types shared across the package."""


class MorinError(Exception):
    """Base class for precondition failures."""


class RankError(MorinError):
    pass


class NotDecomposable(MorinError):
    pass


class IncidenceError(MorinError):
    """Planes are disjoint or meet in more than a point where a point is needed."""


class DegenerateMarking(MorinError):
    """The map A / wedge^3 U -> U (x) wedge^2(W/U) is not invertible."""


class CollinearPoints(MorinError):
    pass


class SingularLocusInHyperplane(MorinError):
    pass


class NoRationalMemberFound(MorinError):
    def __init__(self, msg, attempted=None):
        super().__init__(msg)
        self.attempted = attempted


class StructuralAnomaly(MorinError):
    """A dimension or count that theory fixes came out different."""


class BadPrimeError(MorinError):
    pass


class PositiveDimensional(MorinError):
    """The locus asked for is not finite."""


class IdenticallySingular(MorinError):
    """A conic-bundle matrix whose determinant vanishes identically."""


class DegeneratePosition(MorinError):
    pass


class NotASquareError(MorinError):
    """A polynomial that theory says is a square is not one."""
