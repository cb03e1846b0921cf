"""Exception types shared across the package."""


class KneserVRError(Exception):
    """Base class for all package errors."""


class InvalidInputError(KneserVRError, ValueError):
    """Arguments violate an operation's preconditions."""


class UnsupportedOrderError(KneserVRError, ValueError):
    """No projective plane construction is available for the requested order."""


class ResourceLimitError(KneserVRError):
    """A configured resource cap would be exceeded.

    Raised before the offending allocation, never after a silent truncation.
    """

    def __init__(self, cap, requested, limit, detail=""):
        self.cap = cap
        self.requested = requested
        self.limit = limit
        msg = f"resource cap '{cap}' exceeded: requested {requested}, limit {limit}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class CertificateError(KneserVRError):
    """A generator certificate failed one of its checks."""

    def __init__(self, message, index=None):
        self.index = index
        super().__init__(message)
