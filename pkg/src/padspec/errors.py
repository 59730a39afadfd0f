"""Exception taxonomy.

Every error raised by the library derives from PadspecError.  Certified
negative answers (a matrix provably not unitarily diagonalisable, a
reduction provably not diagonalisable) are *results*, not exceptions; the
exceptions below signal contract violations or precision exhaustion.
"""


class PadspecError(Exception):
    pass


# -- scalar arithmetic ------------------------------------------------------

class DenominatorZero(PadspecError):
    pass


class DivisionByZero(PadspecError):
    pass


class TowerMismatch(PadspecError):
    pass


class NormNotLessThanOne(PadspecError):
    pass


class EvenPrime(PadspecError):
    pass


class NotUnit(PadspecError):
    pass


class NormExceedsOne(PadspecError):
    pass


class PrecisionExhausted(PadspecError):
    """Known digits ran out before the question could be decided."""


# -- residue layer ----------------------------------------------------------

class ZeroPolynomial(PadspecError):
    pass


class FieldTooLarge(PadspecError):
    pass


class DuplicateEigenvalue(PadspecError):
    pass


# -- matrices ---------------------------------------------------------------

class ImpreciseEntry(PadspecError):
    """An imprecise-zero entry poisons a norm comparison."""


class Singular(PadspecError):
    pass


class NotStable(PadspecError):
    pass


class ZeroMatrix(PadspecError):
    pass


class WrongShape(PadspecError):
    pass


# -- spectral layer ---------------------------------------------------------

class NotApproxIdempotent(PadspecError):
    pass


class NormNotOne(PadspecError):
    pass


class ReductionNotDiagonalisable(PadspecError):
    """Carries the residue-level certificate as .certificate."""

    def __init__(self, certificate):
        super().__init__(f"reduction not diagonalisable: {certificate.reason}")
        self.certificate = certificate


class NotNaiveAtLevel(PadspecError):
    def __init__(self, level, certificate):
        super().__init__(f"repetitive reduction obstructed at level {level}")
        self.level = level
        self.certificate = certificate


class NotUnitarilyDiagonalisable(PadspecError):
    def __init__(self, certificate):
        super().__init__("matrix is not unitarily diagonalisable")
        self.certificate = certificate


# -- functional calculus ----------------------------------------------------

class SpectrumNotCovered(PadspecError):
    def __init__(self, eigenvalue):
        super().__init__("an eigenvalue lies in no piece of the function")
        self.eigenvalue = eigenvalue


class OverlappingPieces(PadspecError):
    pass


class NotNaive(PadspecError):
    def __init__(self, certificate):
        super().__init__("operator does not admit the calculus")
        self.certificate = certificate


# -- windowed operators -----------------------------------------------------

class WindowTooNarrow(PadspecError):
    pass


class SupportNotAllowed(PadspecError):
    pass


class FactorialValuationLoss(PadspecError):
    pass


# -- states and probabilities -----------------------------------------------

class NotNormal(PadspecError):
    def __init__(self, certificate):
        super().__init__("observable is not a normal matrix")
        self.certificate = certificate


class ZeroState(PadspecError):
    pass


# -- literals / CLI ---------------------------------------------------------

class BadLiteral(PadspecError):
    pass


class DigitOutOfRange(PadspecError):
    pass
