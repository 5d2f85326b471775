"""Exception types shared across the package."""


class KioskSimError(Exception):
    """Base class for all kiosksim errors."""


class DomainError(KioskSimError, ValueError):
    """A parameter lies outside its documented domain."""


class SamplingError(KioskSimError, RuntimeError):
    """A sampling routine could not produce a valid draw."""


class IncompleteGridError(KioskSimError, ValueError):
    """Sweep results do not cover the full rectangular grid."""


class ConfigError(KioskSimError, ValueError):
    """A configuration document or flag value is invalid."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")
