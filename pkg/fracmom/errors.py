"""Exceptions raised by fracmom. The CLI maps them to exit codes."""


class FracMomError(Exception):
    """Base class for every error raised by this package."""


class UnsupportedArgument(FracMomError, ValueError):
    """An argument outside the range the formulas are stated for."""


class DomainError(FracMomError, ValueError):
    """A special function evaluated outside its real domain."""


class PrecisionUnachievable(FracMomError, ArithmeticError):
    """The requested number of digits cannot be reached within the configured caps."""
