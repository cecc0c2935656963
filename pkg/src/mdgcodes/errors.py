"""Exception types shared across the package."""


class MdgcodesError(Exception):
    """Base class for all package-specific errors."""


class FormatError(MdgcodesError):
    """A text artifact (code file, graph file, mapping) is malformed.

    Carries the offending line number when known.
    """

    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"line {line}: "
        super().__init__(where + message)


class InvalidGraphError(MdgcodesError):
    """The input graph is not a valid minimum distance graph of the claimed kind.

    Raised whenever one of the structural censuses fails (neighbor counts,
    clique counts, labeling conflicts, ...).  ``context`` holds the offending
    location (source vertex, iteration, counts, ...) for diagnostics.
    """

    def __init__(self, message, **context):
        self.context = dict(context)
        if context:
            detail = ", ".join(f"{k}={v}" for k, v in sorted(context.items()))
            message = f"{message} ({detail})"
        super().__init__(message)


class UnsupportedParameterError(MdgcodesError):
    """A parameter is outside the range this implementation supports."""
