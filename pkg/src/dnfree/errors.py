"""Exception hierarchy shared by every module of the package."""


class DnFreeError(Exception):
    """Base class for all errors raised by :mod:`dnfree`."""


class ValidationError(DnFreeError, ValueError):
    """Malformed input value (bad partition, bad word, bad table)."""


class DimensionError(DnFreeError, ValueError):
    """Two values disagree on N (components), n (ground set) or order."""


class DomainError(DnFreeError, ValueError):
    """An operation was applied outside its domain of definition."""


class NotInvertibleError(DomainError):
    """A diagonal scalar with a zero component was asked for its inverse."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"component {index} is zero; not in D_N^-1")


class OrderError(DomainError):
    """Möbius value requested for an empty interval (p is not below q)."""


class BoundError(DnFreeError, ValueError):
    """A size parameter is outside the supported range."""


class TruncationError(BoundError):
    """A coefficient beyond the tracked truncation order was needed."""


class ParseError(DnFreeError, ValueError):
    """Text or JSON input could not be parsed.

    ``field`` is a dotted/indexed path into the document (``components[1].moments[0]``),
    or ``None`` when the failure is positional (``line``/``column`` are set then).
    """

    def __init__(self, message, field=None, line=None, column=None):
        self.field = field
        self.line = line
        self.column = column
        where = []
        if field is not None:
            where.append(f"field {field}")
        if line is not None:
            where.append(f"line {line} column {column}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
