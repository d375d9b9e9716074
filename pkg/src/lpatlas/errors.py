"""Exception hierarchy.

Input problems derive from :class:`InputError`; broken internal guarantees
raise :class:`InternalInconsistency`.  The CLI maps the two families to
distinct exit codes.
"""


class LpAtlasError(Exception):
    pass


class InputError(LpAtlasError, ValueError):
    pass


class NonSquareError(InputError):
    pass


class NotSingError(InputError):
    pass


class EmptyGraphError(InputError):
    pass


class NotHereditaryError(InputError):
    pass


class SizeMismatchError(InputError):
    pass


class SizeLimitError(InputError):
    pass


class NotASinkError(InputError):
    pass


class DimensionMismatchError(InputError):
    pass


class TooLargeError(InputError):
    pass


class UnsupportedFormatError(InputError):
    pass


class InternalInconsistency(LpAtlasError, RuntimeError):
    pass


class NoMatchError(InternalInconsistency):
    pass
