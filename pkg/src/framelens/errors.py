"""Exception types shared across the package."""


class UsageError(Exception):
    """Bad invocation: unknown flags, missing required arguments, invalid config values."""


class DataError(Exception):
    """Input data violates a contract (unreadable file, empty corpus, unknown frame, ...)."""
