"""Domain errors.

Each class name doubles as the stable machine-readable error code that the
CLI prints on stderr before exiting with status 1.
"""


class SpectraError(Exception):
    """Base class for all domain errors raised by this package."""

    @property
    def code(self) -> str:
        return type(self).__name__


# graph parsing and validation
class ParseError(SpectraError):
    """Input text is not well formed in the declared format."""


class NotSimple(SpectraError):
    """Input contains a self-loop or a repeated edge."""


class Disconnected(SpectraError):
    """Graph is not connected; nothing here is defined for it."""


# spectra
class ClusterAmbiguity(SpectraError):
    """An eigenvalue gap falls in the dead zone where the clustering
    tolerance can neither merge nor separate with confidence."""


class DegenerateSpectrum(SpectraError):
    """Orthogonalization broke down; the input is not a valid spectrum."""


# polynomial coefficient matrices
class ZeroLeadingCoeff(SpectraError):
    """A leading polynomial coefficient is numerically zero."""


class SingularOmega(SpectraError):
    """Coefficient matrix is not invertible."""


# representation conversions
class NonRealRoots(SpectraError):
    """Root finding produced complex roots beyond tolerance."""


class MultiplicityDrift(SpectraError):
    """A recovered multiplicity is too far from an integer."""


class NoRootAbove(SpectraError):
    """No real root exceeds the known subdominant eigenvalues."""


class MomentDeficit(SpectraError):
    """Too few walk moments supplied for the requested order."""


class NonSimpleEigenvalues(SpectraError):
    """Recurrence matrix eigenvalues cluster within tolerance."""


# distance-regularity checks
class NotRegular(SpectraError):
    """Operation requires a regular graph."""


class NegativeAlphaAnomaly(SpectraError):
    """A significantly negative recurrence diagonal appears before the
    first positive one, outside the pattern the odd-girth test assumes."""


class RegularityRequired(SpectraError):
    """Check is only stated for regular graphs and the input is not."""


class PatternUnmatched(SpectraError):
    """Neither girth clause applies to the coefficient pattern."""


class InternalInconsistency(SpectraError):
    """Two routes that must agree did not; indicates corrupted input or a
    numerical breakdown, not a user error."""


class InstabilityWarning(UserWarning):
    """Moment-space orthogonalization is running out of precision."""
