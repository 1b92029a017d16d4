"""Steady-state pump-probe susceptibility of a driven two-level exciton.

Everything here works in variables normalized by the dephasing time ``T2``:
pump Rabi frequency ``omega_c``, pump-exciton detuning ``delta_c``, probe-exciton
detuning ``delta_s`` and the beat detuning ``delta_beat = delta_s + delta_c``.
The only dimensional quantities are the two lifetimes (their ratio enters) and
the probe wavelength used to convert the susceptibility into optical constants.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, SingularityError

__all__ = [
    "SystemParams",
    "ProbeDetuning",
    "ComplexSusceptibility",
    "OpticalConstants",
    "GainWarning",
    "REFERENCE_POINT",
    "WAVELENGTH",
    "population_inversion",
    "cpo_denominator",
    "susceptibility",
    "chi_closed_form",
    "optical_constants",
    "transmission",
]

#: Probe wavelength of the reference configuration, meters.
WAVELENGTH = 530e-9

_DENOMINATOR_FLOOR = 1e-300


class GainWarning(UserWarning):
    """Negative absorption: the medium amplifies the probe."""


@dataclass(frozen=True)
class SystemParams:
    """Driven two-level configuration.

    Parameters
    ----------
    t1 : float
        Exciton lifetime [s].
    t2 : float
        Exciton dephasing time [s].
    omega_c : float
        Pump Rabi frequency in units of ``1/T2``.
    delta_c : float
        Pump-exciton detuning ``(omega_ex - omega_c) T2``.
    """

    t1: float = 1.5e-11
    t2: float = 3e-13
    omega_c: float = 0.3
    delta_c: float = 0.05

    def __post_init__(self):
        for name in ("t1", "t2", "omega_c", "delta_c"):
            if not math.isfinite(getattr(self, name)):
                raise ParameterError(f"{name} must be finite")
        if self.t1 <= 0 or self.t2 <= 0:
            raise ParameterError("lifetimes t1 and t2 must be positive")
        if self.omega_c < 0:
            raise ParameterError("omega_c must be non-negative")

    @property
    def decay_ratio(self) -> float:
        """``T2/T1``, the population decay rate in units of ``1/T2``."""
        return self.t2 / self.t1

    def replace(self, **changes) -> "SystemParams":
        values = dict(t1=self.t1, t2=self.t2, omega_c=self.omega_c, delta_c=self.delta_c)
        values.update(changes)
        return SystemParams(**values)


@dataclass(frozen=True)
class ProbeDetuning:
    """Probe-exciton detuning ``(omega_s - omega_ex) T2``."""

    delta_s: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.delta_s):
            raise ParameterError("delta_s must be finite")

    def beat(self, params: SystemParams) -> float:
        """Pump-probe beat detuning ``delta_c + delta_s`` (dimensionless)."""
        return self.delta_s + params.delta_c


@dataclass(frozen=True)
class ComplexSusceptibility:
    re: float
    im: float

    @classmethod
    def from_complex(cls, value: complex) -> "ComplexSusceptibility":
        value = complex(value)
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise ParameterError(f"non-finite susceptibility {value!r}")
        return cls(value.real, value.imag)

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self):
        return abs(self.value)


@dataclass(frozen=True)
class OpticalConstants:
    """Refractive index, absorption coefficient [1/m] and wavelength [m]."""

    n: float
    alpha: float
    lambda_m: float


#: Reference configuration: room-temperature lifetimes, Omega_c = 0.3, Delta_c = 0.05.
REFERENCE_POINT = SystemParams()


def _inversion(omega_c, delta_c, t1_over_t2):
    lorentz = 1.0 + delta_c**2
    return -lorentz / (lorentz + 4.0 * omega_c**2 * t1_over_t2)


def _denominator(omega_c, delta_c, delta_beat, t2_over_t1):
    lorentz = 1.0 + delta_c**2
    one_m = 1.0 - 1j * delta_beat
    return (t2_over_t1 - 1j * delta_beat) * lorentz * (one_m**2 + delta_c**2) + (
        4.0 * omega_c**2 * one_m * lorentz
    )


def population_inversion(params: SystemParams) -> float:
    """Steady-state inversion ``w0`` under the pump alone.

    The self-consistency condition is linear in ``w0`` and is solved in
    closed form: ``w0 = -(1 + dc^2) / (1 + dc^2 + 4 omega_c^2 T1/T2)``.
    """
    return float(_inversion(params.omega_c, params.delta_c, params.t1 / params.t2))


def cpo_denominator(params: SystemParams, delta_beat: float) -> complex:
    if not math.isfinite(delta_beat):
        raise ParameterError("delta_beat must be finite")
    return complex(_denominator(params.omega_c, params.delta_c, delta_beat, params.decay_ratio))


def chi_closed_form(omega_c, delta_c, delta_s, t2_over_t1):
    """Vectorized susceptibility; arguments broadcast as numpy arrays.

    Returns a complex array (or complex scalar for scalar input). Raises
    :class:`SingularityError` if the denominator underflows anywhere.
    """
    omega_c = np.asarray(omega_c, dtype=float)
    delta_c = np.asarray(delta_c, dtype=float)
    delta_s = np.asarray(delta_s, dtype=float)
    delta_beat = delta_s + delta_c
    w0 = _inversion(omega_c, delta_c, 1.0 / t2_over_t1)
    den = _denominator(omega_c, delta_c, delta_beat, t2_over_t1)
    if np.any(np.abs(den) < _DENOMINATOR_FLOOR):
        raise SingularityError("CPO denominator vanished")
    bracket = 1.0 - (2.0 * omega_c**2 / den) * (1.0 + 1j * delta_c) * (
        1.0 - 1j * (delta_c + delta_beat)
    ) * (2.0 - 1j * delta_beat)
    chi = -1j * w0 / (1.0 + 1j * (delta_c - delta_beat)) * bracket
    return chi[()] if chi.ndim == 0 else chi


def susceptibility(params: SystemParams, probe: ProbeDetuning) -> ComplexSusceptibility:
    """Linear probe susceptibility in the presence of the pump.

    Examples
    --------
    >>> chi = susceptibility(SystemParams(omega_c=0.0), ProbeDetuning(1.0))
    >>> round(chi.re, 12), round(chi.im, 12)
    (-0.5, 0.5)
    """
    chi = chi_closed_form(params.omega_c, params.delta_c, probe.delta_s, params.decay_ratio)
    return ComplexSusceptibility.from_complex(chi)


def optical_constants(chi: ComplexSusceptibility, lambda_m: float = WAVELENGTH) -> OpticalConstants:
    """``n = 1 + Re(chi)/2`` and ``alpha = 2 pi Im(chi) / lambda``."""
    if not lambda_m > 0:
        raise ParameterError("wavelength must be positive")
    return OpticalConstants(
        n=1.0 + 0.5 * chi.re,
        alpha=2.0 * math.pi * chi.im / lambda_m,
        lambda_m=lambda_m,
    )


def transmission(alpha: float, thickness: float) -> float:
    """Intensity transmission ``exp(-alpha d)`` through a slab of thickness ``d``.

    Absorbing slabs (``alpha >= 0``) are clamped to ``[0, 1]``. A negative
    ``alpha`` returns the unclamped gain and emits a :class:`GainWarning`.
    """
    if thickness < 0:
        raise ParameterError("thickness must be non-negative")
    value = math.exp(-alpha * thickness)
    if alpha < 0:
        warnings.warn(f"gain medium: alpha = {alpha:g} 1/m", GainWarning, stacklevel=2)
        return value
    return min(max(value, 0.0), 1.0)
