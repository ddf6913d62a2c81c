"""
Exception types raised by the bracketflow package.
"""


class BracketFlowError(Exception):
    """Base class for all bracketflow errors."""


class InvalidConstantsError(BracketFlowError, ValueError):
    """Structure constants are not three finite reals."""


class InvalidMetricError(BracketFlowError, ValueError):
    """Diagonal metric coefficients must be finite and strictly positive."""


class InvalidParameterError(BracketFlowError, ValueError):
    """A flow, sweep or catalog parameter is out of range."""
