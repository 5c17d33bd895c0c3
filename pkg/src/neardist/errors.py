"""Exception types shared across the package."""


class InputError(ValueError):
    """A caller-supplied value violates an operation's preconditions."""


class UnsupportedError(InputError):
    """The request is well-formed but outside the exactly-known range."""


class BudgetError(RuntimeError):
    """An enumeration would exceed the library's search budget."""


class ParseError(InputError):
    """A point-set file is malformed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CertificateError(RuntimeError):
    """A decomposition certificate could not be completed.

    ``witness`` holds the offending data, e.g. the index triple on which
    the small-distance relation failed to be transitive.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
