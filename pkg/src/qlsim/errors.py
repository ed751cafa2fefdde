"""Exception hierarchy shared across the package.

The CLI maps ConfigError to exit code 2 and the numerical errors to exit
code 3; everything derives from QlsimError so library users can catch one
base class.
"""


class QlsimError(Exception):
    """Base class for all package errors."""


class DomainError(QlsimError, ValueError):
    """An argument is outside the physically meaningful domain."""


class ConfigError(QlsimError):
    """A configuration or constants file is missing, incomplete or invalid."""


class SingularityError(QlsimError, ArithmeticError):
    """A detuning is too close to a resonance for the perturbative formulas."""


class IntegrationError(QlsimError):
    """The trajectory integration failed (step control, ion crossing)."""


class ConversionError(QlsimError):
    """The two-ion to single-ion force conversion could not be bracketed."""


class DegenerateFitError(QlsimError):
    """A trace carries no usable information about the fitted parameter."""
