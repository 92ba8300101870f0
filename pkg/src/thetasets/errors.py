"""Exception hierarchy shared by all modules."""


class ThetaSetError(Exception):
    """Base class for errors raised by thetasets."""


class ResourceLimitError(ThetaSetError, MemoryError):
    """A table or enumeration would exceed the configured budget."""


class PreconditionError(ThetaSetError, ValueError):
    """An operation was called outside its documented domain."""


class WordOverflowError(ThetaSetError, OverflowError):
    """A value left the 64/128-bit range the counting contracts assume."""


class SpecParseError(ThetaSetError, ValueError):
    """A theta spec string does not match the grammar."""


class TableLimitError(ResourceLimitError):
    """A prime/Mertens table is too small for the requested query."""
