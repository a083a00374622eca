"""Exception hierarchy shared by every farpoint module."""


class FarpointError(Exception):
    """Base class for all errors raised by farpoint."""


class RepresentationMismatch(FarpointError, TypeError):
    pass


class DegenerateVector(FarpointError, ValueError):
    pass


class InvalidParameter(FarpointError, ValueError):
    pass


class IndexOutOfRange(FarpointError, IndexError):
    pass


class EmptySet(FarpointError, ValueError):
    pass


class UnsupportedCombination(FarpointError):
    """No sound tail bound is registered; enlarge the prefix instead."""


class UnsupportedSpace(FarpointError):
    pass


class NoEpsilonMaximizer(FarpointError):
    pass


class InvalidX(FarpointError, ValueError):
    pass


class InvalidObjective(FarpointError, ValueError):
    pass


class ConfigError(FarpointError, ValueError):
    """Invalid run configuration.

    ``diagnostics`` holds one ``(field, message)`` pair per problem found.
    """

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(f"{k}: {m}" for k, m in self.diagnostics))


class IoError(FarpointError, OSError):
    pass
