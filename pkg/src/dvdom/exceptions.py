"""Exception hierarchy shared by the solvers and the command line."""


class DvdError(Exception):
    """Base class for all package errors."""


class InputError(DvdError, ValueError):
    """Malformed or inconsistent input (bad vertex id, infeasible demand, ...)."""


class FormatError(InputError):
    """A file could not be parsed; carries the offending line number."""

    def __init__(self, message, lineno=None, path=None):
        self.lineno = lineno
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if lineno is not None:
            where += f"{lineno}:"
        super().__init__(f"{where} {message}" if where else message)


class InapplicableError(DvdError):
    """The requested algorithm does not handle this instance (e.g. radii > 1 for VD)."""


class RefusalError(DvdError):
    """The solver refuses to run: width or size over the configured cap."""


class SelfCheckError(DvdError, AssertionError):
    """A solver returned a set that fails verification. Always a bug."""
