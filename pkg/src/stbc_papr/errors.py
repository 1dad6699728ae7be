"""Exception hierarchy shared by every module."""


class StbcPaprError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(StbcPaprError, ValueError):
    """Invalid parameter, size or configuration key."""

    def __init__(self, message, key=None):
        self.key = key
        if key is not None:
            message = f"{key}: {message}"
        super().__init__(message)


class InputError(StbcPaprError, ValueError):
    """Malformed data passed to an operation (lengths, parity)."""


class UndefinedPaprError(StbcPaprError, ValueError):
    """PAPR or RMS requested for an all-zero signal."""


class DegenerateChannelError(StbcPaprError, ValueError):
    """Combining requested over a channel with zero total gain."""


class SideInfoError(StbcPaprError, ValueError):
    """Side information does not match the codebook or plan it refers to."""
