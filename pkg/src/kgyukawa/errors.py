"""Exception hierarchy.

Every error raised by the library derives from :class:`KGError`. The two
intermediate classes, :class:`DomainError` and :class:`ConvergenceError`,
map onto the command-line exit codes 3 and 4.
"""


class KGError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class DomainError(KGError, ValueError):
    """An input lies outside the domain of the requested operation."""

    exit_code = 3


class ConvergenceError(KGError, ArithmeticError):
    """A numerical procedure failed to reach its tolerance."""

    exit_code = 4


class PoleError(DomainError):
    """Gamma-type function evaluated at (or within 1e-12 of) a pole."""


class DegenerateConnection(DomainError):
    """c - a - b is too close to an integer for the 2F1 connection formula."""


class SupercriticalCoupling(DomainError):
    """A square-root radicand in an exponent went negative (coupling too strong)."""


class UnboundEnergy(DomainError):
    """|E| exceeds the rest energy where a bound state is required."""


class ComplexExponent(DomainError):
    """lambda_1^2 < 0, so the small-z exponent is not real."""


class ComplexEnergy(DomainError):
    """The closed-form energy has a negative inner radicand."""


class ClosedChannel(DomainError):
    """Scattering requested with E^2 <= m0^2 c^4."""


class NoRootInBracket(ConvergenceError):
    """No eigenvalue or root was found inside the supplied bracket."""


class NodeCountMismatch(ConvergenceError):
    """The located eigenstate has a different number of nodes than requested."""


class NonConvergence(ConvergenceError):
    """A series did not converge within ``max_terms``."""


class QuadratureFailure(ConvergenceError):
    """Adaptive quadrature could not reach its absolute tolerance."""


class FitFailure(ConvergenceError):
    """The asymptotic sinusoid fit left a residual above threshold."""


class TailNotDecayed(ConvergenceError):
    """A bound-state solution has not decayed at the end of its grid."""


class NumericOverflow(ConvergenceError, OverflowError):
    """A result left the range of double precision."""
