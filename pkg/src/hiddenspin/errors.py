"""Exception hierarchy shared across the package."""


class HiddenSpinError(Exception):
    """Base class for all package errors."""


class InvalidStateError(HiddenSpinError, ValueError):
    """A spinor or particle state violates its normalization contract."""


class DomainError(HiddenSpinError, ValueError):
    """An argument lies outside the physical domain (e.g. |v| >= c)."""


class SingularPointError(HiddenSpinError, ValueError):
    """A field or term was evaluated at a singular point."""


class ConfigurationError(HiddenSpinError, ValueError):
    """A field configuration is malformed or names an unknown family."""
