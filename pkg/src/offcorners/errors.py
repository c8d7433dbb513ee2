"""Exception hierarchy for offcorners.

Every precondition failure raises a dedicated subclass so callers can
distinguish "the input is outside the contract" from a numerical breakdown.
"""


class OffCornersError(ValueError):
    """Base class for all offcorners errors."""


class DimensionMismatchError(OffCornersError):
    """Shapes of the operands are incompatible (or a square matrix was required)."""


class NonFiniteError(OffCornersError):
    """Matrix contains NaN or Inf entries."""


class NotNormalError(OffCornersError):
    """Operation requires a normal matrix (T T* = T* T within tolerance)."""


class NoConvergenceError(OffCornersError):
    """Eigenvalue iteration exhausted its budget."""


class RankDeficientError(OffCornersError):
    """Matrix does not have full column rank."""


class InvalidFrameError(OffCornersError):
    """Columns are not orthonormal within tolerance."""


class FullOrZeroRankError(OffCornersError):
    """Projection rank must satisfy 1 <= k <= n-1."""


class NotUnitaryError(OffCornersError):
    """Operation requires a unitary matrix."""


class PivotSingularError(OffCornersError):
    """Selected pivot block is numerically singular."""


class PivotNotSquareError(OffCornersError):
    """Selected pivot block is not square."""


class SingularMatrixError(OffCornersError):
    """A required inverse does not exist numerically."""


class CoincidentPointsError(OffCornersError):
    """Three-point interpolation requires pairwise distinct points."""


class PoleOnSpectrumError(OffCornersError):
    """A Moebius map has a pole too close to an eigenvalue."""


class EmptyInputError(OffCornersError):
    """A nonempty collection of points was required."""


class NotCirclinearError(OffCornersError):
    """Spectrum does not lie on a common line or circle within tolerance."""


class NotUnimodularError(OffCornersError):
    """Points must lie on the unit circle within tolerance."""


class BetaRealError(OffCornersError):
    """Parameter beta must have a nonzero imaginary part."""


class DeltaRealError(OffCornersError):
    """Spectrum parameter delta must have a nonzero imaginary part."""


class DeltaDegenerateError(OffCornersError):
    """Spectrum parameter delta is too close to a degenerate value."""


class VerificationFailedError(OffCornersError):
    """A constructed witness failed its from-scratch re-verification.

    This signals a numerical breakdown (tolerance misconfiguration or a
    degenerate eigenvector selection), never a mathematical outcome.
    """


class ZeroVectorError(OffCornersError):
    """A nonzero generator vector was required."""
