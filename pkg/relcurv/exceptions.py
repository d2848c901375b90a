"""Errors raised by relcurv."""
from __future__ import annotations

from .const import EXIT_CONFIG, EXIT_NUMERICAL, EXIT_VERIFICATION


class RelCurvError(Exception):
    """Base class of all library errors."""

    exit_code: int = EXIT_NUMERICAL

    @property
    def kind(self) -> str:
        """Short machine readable name of the error."""
        return type(self).__name__


# configuration


class ConfigError(RelCurvError):
    """Configuration could not be used."""

    exit_code = EXIT_CONFIG


class ConfigSyntax(ConfigError):
    """Config text is not valid TOML."""

    def __init__(self, message: str, line: int | None = None) -> None:
        """Keep the offending line number when known."""
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConfigSemantic(ConfigError):
    """Config parsed but refers to unknown families or bad ranges."""


# verification


class VerificationFailure(RelCurvError):
    """At least one invariant of the suite failed."""

    exit_code = EXIT_VERIFICATION


# numerics


class NumericalFailure(RelCurvError):
    """Solver, quadrature or rank computation failed."""


class RadiusCollapse(NumericalFailure):
    """Meridian radius reached zero."""


class StepFailure(NumericalFailure):
    """Adaptive integrator could not proceed."""


class DomainExit(NumericalFailure):
    """Meridian slope blew up (vertical tangent)."""


class QuadratureFailure(NumericalFailure):
    """Adaptive quadrature did not converge."""


class RankTolerance(NumericalFailure):
    """Singular value gap too small to decide a rank."""


class IoFailure(RelCurvError):
    """Output could not be written."""


# geometry


class GeometryError(RelCurvError):
    """Input outside the geometric domain of an operation."""


class OutOfDomain(GeometryError):
    """Point outside the chart."""


class DegenerateMetric(GeometryError):
    """Metric is not positive definite."""


class JetOrderInsufficient(GeometryError):
    """Jet lacks the derivative order an operation needs."""


class SymmetryViolation(GeometryError):
    """Tensor fails the identities an operation relies on."""


class NotUnit(GeometryError):
    """A 1-form expected to be unit is not."""


class DegenerateScalarGradient(GeometryError):
    """The scalar curvature gradient vanishes."""


class PlaneInsideDistribution(GeometryError):
    """Plane lies inside the kernel of eta."""


class LocallySymmetric(GeometryError):
    """Covariant derivative of the curvature vanishes."""


class ProfileDomain(GeometryError):
    """Parameter outside the profile domain."""


class ConstantCurvatureDegeneracy(GeometryError):
    """Coefficient b vanishes, lambda has no quotient form."""


class DomainViolation(GeometryError):
    """Meridian constraint 0 < (A r^2 + B) r^2 < 1 broken."""


class DiscriminantNegative(GeometryError):
    """B^2 + 4A is negative."""


class ModulusOutOfRange(GeometryError):
    """Elliptic modulus or argument outside [0, 1)."""


class FieldNotEvaluable(GeometryError):
    """Unit field could not be evaluated near a point."""


class HypothesisViolated(GeometryError):
    """Profile does not satisfy a - b = const."""


class NearSingularFit(GeometryError):
    """tau - nB vanishes at every sample."""
