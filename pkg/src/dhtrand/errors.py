"""Exception hierarchy. Everything raised on bad input derives from ``DhtRandError``."""


class DhtRandError(ValueError):
    """Base class for invalid arguments and malformed inputs."""


class InvalidSizeError(DhtRandError):
    pass


class InvalidInputError(DhtRandError):
    pass


class InvalidPrimeError(DhtRandError):
    pass


class InvalidLengthError(DhtRandError):
    pass


class TooManySwitchesError(DhtRandError):
    pass


class InvalidSpecError(DhtRandError):
    pass


class InvalidConfigError(DhtRandError):
    pass


class BitstringParseError(DhtRandError):
    """Raised for a character other than '0'/'1'; ``offset`` is its 0-based position."""

    def __init__(self, message, offset):
        super().__init__(message)
        self.offset = offset
