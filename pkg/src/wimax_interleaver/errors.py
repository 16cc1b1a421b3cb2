"""Exception hierarchy.

Parameter problems derive from ``ParameterError`` (a ``ValueError``) so the CLI
can map them to a single exit code; stream/data problems derive from
``StreamError``.
"""


class InterleaverError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(InterleaverError, ValueError):
    pass


class BadRowCount(ParameterError):
    pass


class NotDivisibleByD(ParameterError):
    pass


class ColumnsNotMultipleOfS(ParameterError):
    pass


class IndexOutOfRange(InterleaverError, IndexError):
    pass


class NotAPermutation(InterleaverError, ValueError):
    pass


class Exhausted(InterleaverError, StopIteration):
    pass


class LengthMismatch(InterleaverError, ValueError):
    pass


class DimensionTooLarge(ParameterError):
    pass


class BurstTooLong(ParameterError):
    pass


class StreamError(InterleaverError):
    pass


class PartialBlock(StreamError):
    def __init__(self, frame: int, got: int, expected: int):
        self.frame = frame
        self.got = got
        self.expected = expected
        super().__init__(
            f"frame {frame}: partial block of {got} bits, expected {expected} "
            f"(use the pad policy to zero-fill)"
        )


class BitFormatError(StreamError):
    pass


class StreamIOError(StreamError):
    def __init__(self, frame: int, cause: OSError):
        self.frame = frame
        super().__init__(f"frame {frame}: {cause}")
