"""Exception hierarchy shared by every module of the package."""


class CpoError(Exception):
    """Base class for all errors raised by :mod:`cposlm`."""

    exit_code = 1


class ParameterError(CpoError, ValueError):
    """A physical or numerical parameter is outside its valid domain."""


class SingularityError(CpoError, ArithmeticError):
    """The susceptibility denominator vanished."""


class ConvergenceError(CpoError):
    exit_code = 3


class SamplingError(CpoError, ValueError):
    """A raster or field is too coarse to resolve the requested structure."""

    exit_code = 4


class GeometryError(SamplingError):
    """Field/map geometry mismatch or a violated sampling guard."""


class ProfileDomainError(ParameterError):
    """``b*psi + c`` is non-positive somewhere on the pump profile."""


class FlatResponseError(ParameterError):
    """The azimuthal response has (numerically) equal endpoints."""


class ZeroBeatError(ParameterError):
    """Pump-probe beat detuning is zero, so no first harmonic exists."""


class StabilityError(ConvergenceError):
    """The fixed-step integrator moved too far in a single step."""


class LeakageError(ParameterError):
    """Demodulation window is not an integer number of beat periods."""


class ConfigError(CpoError, ValueError):
    exit_code = 2

    def __init__(self, key, message):
        super().__init__(f"{key}: {message}")
        self.key = key


class OutputError(CpoError, OSError):
    exit_code = 5
