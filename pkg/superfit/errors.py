class SuperFitError(Exception):
    """Base class for all errors raised by superfit."""


class RingMismatchError(SuperFitError, ValueError):
    """Operands live in different rings."""


class HomogeneityError(SuperFitError, ValueError):
    """An operation that needs parity-homogeneous input received a mixed element."""


class ParseError(SuperFitError, ValueError):
    """Malformed textual polynomial or JSON payload."""


class DimensionError(SuperFitError, ValueError):
    """Shapes or dimensions of matrices / setups do not agree."""


class ZeroAnnihilatorError(SuperFitError):
    """Requested the generator Z for dimensions whose annihilator is zero."""


class ResourceLimitError(SuperFitError):
    """
    A compute cap was exceeded

    Parameters
    ----------
    message : str
        description of the exceeded cap
    partial : object, optional
        the partial result computed before the cap was hit
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
