"""Exception hierarchy shared by every stage of the codec."""


class FJPEGError(Exception):
    """Base class for all errors raised by this package."""


class PNMError(FJPEGError, ValueError):
    """A portable anymap could not be parsed.

    ``offset`` is the byte position at which parsing failed.
    """

    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class PNMHeaderError(PNMError):
    pass


class PNMTruncatedError(PNMError):
    pass


class PNMMaxvalError(PNMError):
    pass


class SampleRangeError(FJPEGError, ValueError):
    """A sample lies outside the range its domain allows."""


class QualityError(FJPEGError, ValueError):
    pass


class EntropyError(FJPEGError):
    """Base class for bitstream coding failures."""


class EncodeError(EntropyError, ValueError):
    pass


class TruncatedStreamError(EntropyError):
    pass


class InvalidCodeError(EntropyError):
    pass


class RunOverflowError(EntropyError):
    """A run of zeros pushed the coefficient index past 63."""


class TrailingDataError(EntropyError):
    pass


class ContainerError(FJPEGError):
    """Base class for malformed ``.fjpg`` containers."""


class BadMagicError(ContainerError):
    pass


class UnsupportedVersionError(ContainerError):
    pass


class BadModeError(ContainerError):
    pass


class HeaderFieldError(ContainerError):
    """Dimensions, channel count or quality out of range."""


class PayloadLengthError(ContainerError):
    pass
