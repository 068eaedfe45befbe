"""Exception types raised by the choimap package."""


class ChoiMapError(ValueError):
    """Base class for all validation and numerical errors in this package."""


class GaugeViolation(ChoiMapError):
    pass


class NegativeEntry(ChoiMapError):
    def __init__(self, i, j, value):
        super().__init__(f"W[{i},{j}] = {value!r} is negative")
        self.i, self.j, self.value = i, j, value


class NotDoublyScalable(ChoiMapError):
    pass


class NonHermitianInput(ChoiMapError):
    pass


class InvalidState(ChoiMapError):
    pass


class EmptyIndexSet(ChoiMapError):
    pass


class NegativeRadicand(ChoiMapError):
    pass


class ConditionNotSaturated(ChoiMapError):
    pass


class DegenerateEdge(ChoiMapError):
    pass


class InadmissibleBase(ChoiMapError):
    pass


class Inadmissible(ChoiMapError):
    pass


class WrongRegion(ChoiMapError):
    pass


class NoRealIntersection(ChoiMapError):
    pass


class ConvergenceFailure(ChoiMapError):
    pass


class OutOfRange(ChoiMapError):
    pass


class NotOnCirculantSlice(ChoiMapError):
    pass


class NotPositiveMap(ChoiMapError):
    pass
