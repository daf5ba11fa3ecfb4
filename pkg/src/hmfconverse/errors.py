class HMFError(Exception):
    """Base class for all errors raised by the toolkit."""


class InvalidField(HMFError):
    pass


class InvalidArgument(HMFError):
    pass


class IncompleteFactorization(HMFError):
    pass


class BoundExhausted(HMFError):
    pass


class UnsupportedPrime(HMFError):
    pass


class IncompleteData(HMFError):
    pass


class ConvergenceRefused(HMFError):
    pass


class PoleError(HMFError):
    pass


class AccuracyNotMet(HMFError):
    def __init__(self, message, achieved=None, required=None):
        super().__init__(message)
        self.achieved = achieved
        self.required = required


class DomainError(HMFError):
    pass


class InvalidMatrix(HMFError):
    pass


class CosetCoverError(HMFError):
    pass


class IngestError(HMFError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
