"""Exception hierarchy shared by the numerical modules and the batch driver."""


class SpectralSumsError(Exception):
    pass


class DomainError(SpectralSumsError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class SolverError(SpectralSumsError, RuntimeError):
    """A numerical solve could not produce a trustworthy answer."""


class ConvergenceError(SolverError):
    pass


class ResourceGuardError(SolverError):
    """The requested problem would exceed the dense solver's size limit."""


class PairingError(SolverError):
    """Doubled eigenvalues of a real-embedded Hermitian matrix failed to pair up."""


class InsufficientSpectrumError(SpectralSumsError, ValueError):
    pass


class ConfigError(SpectralSumsError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
