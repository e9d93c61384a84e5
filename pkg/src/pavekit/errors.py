"""Exception types for contract violations raised across the toolkit.

Every checked precondition failure raises a named subclass of
:class:`PavekitError`, so callers (and the CLI) can tell a bad input
apart from an unsuccessful search: searches never raise, they return
certificates with verdict ``"invalid"``.
"""


class PavekitError(ValueError):
    """Base class for every precondition violation this package raises."""


# -- linalg ----------------------------------------------------------------

class NonSquare(PavekitError):
    pass


class NotHermitian(PavekitError):
    pass


class NotPSD(PavekitError):
    pass


class IndexOutOfRange(PavekitError):
    pass


# -- frames ----------------------------------------------------------------

class NotAFrame(PavekitError):
    pass


class NotParseval(PavekitError):
    pass


class NotAProjection(PavekitError):
    pass


# -- paving / searches -----------------------------------------------------

class BadPartition(PavekitError):
    pass


class TooLarge(PavekitError):
    """Instance exceeds an enumeration guard (desk-scale limits)."""


class NotIdentityResolution(PavekitError):
    pass


class NotEtaTight(PavekitError):
    pass


class NotUnitNorm(PavekitError):
    pass


class HypothesisFails(PavekitError):
    pass


class NotSelfAdjoint(PavekitError):
    pass


class NormExceedsOne(PavekitError):
    pass


class NotZeroDiagonal(PavekitError):
    pass


# -- subspaces / harmonic ---------------------------------------------------

class NotLarge(PavekitError):
    pass


class EmptySet(PavekitError):
    pass
