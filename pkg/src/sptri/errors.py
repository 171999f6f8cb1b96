"""Exception hierarchy shared by every module of the package."""


class SptriError(Exception):
    """Base class for all errors raised by this package."""


class SingularMatrix(SptriError, ZeroDivisionError):
    pass


class NotSymplectic(SptriError):
    pass


class NotBlockTriangular(SptriError):
    pass


class SigmaNotInSpan(SptriError):
    pass


class InsufficientSamples(SptriError):
    pass


class TauNotZero(SptriError):
    pass


class NotInQ(SptriError):
    pass


class NotASubalgebra(SptriError):
    pass


class AmbientMismatch(SptriError):
    pass


class NotInHSigma(SptriError):
    pass


class NotClassE(SptriError):
    pass


class SigmaDimZero(SptriError):
    pass


class NotLowerTriangular(SptriError):
    pass


class SigmaNotInSigma4Perp(SptriError):
    pass


class PreconditionViolated(SptriError):
    pass


class CrazytauFailed(SptriError):
    """The w0 image of a group leaves the coboundary class."""

    def __init__(self, message, transcript=None):
        super().__init__(message)
        self.transcript = transcript


class SpecError(SptriError, ValueError):
    """Invalid group-spec or CLI input; ``field`` names the offending entry."""

    def __init__(self, message, field=None):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field
