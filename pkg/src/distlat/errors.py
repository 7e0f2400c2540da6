"""Exception hierarchy shared by every module."""


class LatticeError(Exception):
    """Base class for all errors raised by distlat."""


class CycleError(LatticeError):
    """The cover relation closes into a cycle, so the order is not antisymmetric."""


class NotALattice(LatticeError):
    def __init__(self, a, b, what="meet"):
        super().__init__(f"elements {a!r} and {b!r} have no unique {what}")
        self.a, self.b, self.what = a, b, what


class NoBoundsError(LatticeError):
    pass


class ChainExplosion(LatticeError):
    pass


class SizeLimit(LatticeError):
    pass


class NotACover(LatticeError):
    pass


class NotComparable(LatticeError):
    pass


class NotModular(LatticeError):
    pass


class NotDistributive(LatticeError):
    pass


class NotMultiplicityFree(LatticeError):
    pass


class IsoFailure(LatticeError):
    """A constructed isomorphism failed verification. Always a bug."""


class ParseError(LatticeError):
    def __init__(self, message, line=None, column=None):
        where = "" if line is None else f" (line {line}, column {column})"
        super().__init__(message + where)
        self.line, self.column = line, column


class UnknownVertex(ParseError):
    pass


class DimNotThin(ParseError):
    pass


class QuiverNotAcyclic(LatticeError):
    pass


class NotIndecomposable(LatticeError):
    pass


class LabelConflict(LatticeError):
    pass


class NTooLarge(LatticeError):
    pass
