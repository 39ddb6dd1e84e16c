"""Exception types shared across the package."""


class PortfolioError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(PortfolioError, ValueError):
    """Malformed input file. ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DegenerateMapError(PortfolioError, ValueError):
    """The base map has zero diameter, so disparities (and diversity) are undefined."""


class UnknownJournalError(PortfolioError, KeyError):
    pass


class DomainError(PortfolioError, ValueError):
    pass


class WorkspaceLockedError(PortfolioError):
    pass
