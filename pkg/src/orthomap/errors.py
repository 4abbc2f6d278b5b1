"""Exception types shared across the library.

Every error raised deliberately by this package derives from
:class:`OrthomapError`, so callers can catch the whole family at once.
"""


class OrthomapError(Exception):
    """Base class for all library errors."""


class DegenerateMap(OrthomapError):
    """Map parameters satisfy a*d - b*c == 0 (not a bijection)."""


class PoleEvaluation(OrthomapError):
    """A quantity was requested exactly at a pole of the map or weight."""


class BadHomogenization(OrthomapError):
    """Formal degree passed to a homogenizing transform is below deg(p)."""


class NonInvertibleSeries(OrthomapError):
    """Power series reciprocal requested with zero constant term."""


class UnknownFamily(OrthomapError):
    """Family name not in the builtin registry."""


class InadmissibleParameters(OrthomapError):
    """Family parameters outside the admissible range for the request."""


class CoincidentPoints(OrthomapError):
    """Two-point kernel identity evaluated at x == y."""


class NonFiniteIntegrand(OrthomapError):
    """Quadrature integrand produced a non-finite value at a node."""


class UnsupportedContour(OrthomapError):
    """Direct contour integration requested on an unsupported curve kind."""


class NoConvergence(OrthomapError):
    """An iterative method exhausted its budget without converging."""


class BranchConflict(OrthomapError):
    """Power of a negative real base with a non-integer exponent."""


class PoleAtNonpositiveInteger(OrthomapError):
    """Gamma function evaluated at a nonpositive integer."""


class NormalizationImpossible(OrthomapError):
    """Polynomial cannot be scaled to unit constant term (it vanishes at 0)."""


class NonRealCoefficients(OrthomapError):
    """Coefficients expected to be real carry significant imaginary parts."""
