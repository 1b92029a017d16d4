"""Brute-force check of the closed-form susceptibility.

The mean-field Bloch equations are integrated in time with a bichromatic
drive (strong pump plus a weak probe detuned by the beat frequency), and
the polarization component oscillating at the probe frequency is extracted
by demodulation over an integer number of beat periods.

In dimensionless time ``tau = t / T2`` and with ``q = p / mu`` the equations
integrated are::

    dq/dtau = -(1 + i dc) q - i w Omega(tau)
    dw/dtau = -(T2/T1)(w + 1) + 4 Im(q conj(Omega(tau)))
    Omega(tau) = omega_c + omega_s exp(-i delta_beat tau)

``Omega`` here is the same normalized Rabi frequency that enters the closed
form, so the probe susceptibility is ``q1 / omega_s``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from .core import ComplexSusceptibility, ProbeDetuning, SystemParams
from .errors import LeakageError, ParameterError, StabilityError, ZeroBeatError

__all__ = [
    "OracleConfig",
    "BlochSeries",
    "integrate_bloch",
    "demodulate_first_harmonic",
    "oracle_susceptibility",
]

_MAX_STEP = 0.01
_STEPS_PER_PERIOD = 2000
_MAX_DW = 0.1


@dataclass(frozen=True)
class OracleConfig:
    """Knobs of the time-domain oracle.

    ``settle_time`` and ``step`` default to ``None``, meaning ``30 T1/T2`` and
    ``min(0.01, beat period / 2000)``. The step actually used is shrunk so that
    a beat period is an integer number of steps.
    """

    omega_s: float = 5e-5
    settle_time: float | None = None
    demod_periods: int = 8
    step: float | None = None

    def __post_init__(self):
        if not self.omega_s > 0:
            raise ParameterError("omega_s must be positive")
        if self.settle_time is not None and not self.settle_time > 0:
            raise ParameterError("settle_time must be positive")
        if int(self.demod_periods) != self.demod_periods or self.demod_periods < 2:
            raise ParameterError("demod_periods must be an integer >= 2")
        if self.step is not None and not self.step > 0:
            raise ParameterError("step must be positive")


@dataclass(frozen=True)
class BlochSeries:
    """Samples of ``(q, w)`` on a uniform dimensionless time grid."""

    tau: np.ndarray
    q: np.ndarray
    w: np.ndarray
    step: float
    min_w: float
    max_abs_q: float


@numba.njit(cache=True)
def _rhs(q, w, tau, omega_c, omega_s, delta_c, delta_beat, gamma1):
    drive = omega_c + omega_s * complex(math.cos(delta_beat * tau), -math.sin(delta_beat * tau))
    dq = -complex(1.0, delta_c) * q - 1j * w * drive
    dw = -gamma1 * (w + 1.0) + 4.0 * (q * drive.conjugate()).imag
    return dq, dw


@numba.njit(cache=True)
def _rk4(omega_c, omega_s, delta_c, delta_beat, gamma1, h, n_settle, n_record, stride):
    n_out = n_record // stride + 1
    q_out = np.empty(n_out, dtype=np.complex128)
    w_out = np.empty(n_out, dtype=np.float64)
    q = 0.0 + 0.0j
    w = -1.0
    min_w = w
    max_q = 0.0
    status = 0
    k = 0
    total = n_settle + n_record
    for n in range(total):
        if n >= n_settle and (n - n_settle) % stride == 0:
            q_out[k] = q
            w_out[k] = w
            k += 1
        tau = n * h
        k1q, k1w = _rhs(q, w, tau, omega_c, omega_s, delta_c, delta_beat, gamma1)
        k2q, k2w = _rhs(q + 0.5 * h * k1q, w + 0.5 * h * k1w, tau + 0.5 * h,
                        omega_c, omega_s, delta_c, delta_beat, gamma1)
        k3q, k3w = _rhs(q + 0.5 * h * k2q, w + 0.5 * h * k2w, tau + 0.5 * h,
                        omega_c, omega_s, delta_c, delta_beat, gamma1)
        k4q, k4w = _rhs(q + h * k3q, w + h * k3w, tau + h,
                        omega_c, omega_s, delta_c, delta_beat, gamma1)
        dw = h * (k1w + 2.0 * k2w + 2.0 * k3w + k4w) / 6.0
        if abs(dw) > _MAX_DW:
            status = 1
            break
        q = q + h * (k1q + 2.0 * k2q + 2.0 * k3q + k4q) / 6.0
        w = w + dw
        if w < min_w:
            min_w = w
        if abs(q) > max_q:
            max_q = abs(q)
    if status == 0:
        q_out[k] = q
        w_out[k] = w
    return q_out, w_out, min_w, max_q, status


def _step_for(delta_beat: float, cfg: OracleConfig) -> tuple[float, int]:
    """Step size and the number of steps in one beat period."""
    period = 2.0 * math.pi / abs(delta_beat)
    target = cfg.step if cfg.step is not None else min(_MAX_STEP, period / _STEPS_PER_PERIOD)
    per_period = max(1, math.ceil(period / target))
    return period / per_period, per_period


def integrate_bloch(params: SystemParams, probe: ProbeDetuning,
                    cfg: OracleConfig = OracleConfig(), *, omega_s: float | None = None,
                    record_periods: int | None = None, max_samples: int = 400_000):
    """Integrate from the ground state ``q = 0, w = -1`` with fixed-step RK4.

    Returns a :class:`BlochSeries` covering the last ``cfg.demod_periods``
    beat periods (``record_periods`` overrides). ``omega_s`` overrides
    ``cfg.omega_s``, which allows the pump-only run ``omega_s = 0``.
    Output is thinned to at most ``max_samples`` points by an integer stride
    that divides the steps per period, so every recorded window still spans
    whole periods.
    """
    delta_beat = probe.beat(params)
    if delta_beat == 0.0:
        raise ZeroBeatError("beat detuning is zero; perturb delta_s (e.g. by 1e-3)")
    omega_s = cfg.omega_s if omega_s is None else float(omega_s)
    periods = cfg.demod_periods if record_periods is None else int(record_periods)
    settle = cfg.settle_time if cfg.settle_time is not None else 30.0 * params.t1 / params.t2
    h, per_period = _step_for(delta_beat, cfg)
    n_settle = math.ceil(settle / h)
    n_record = periods * per_period
    stride = 1
    while n_record // stride + 1 > max_samples:
        stride += 1
        while per_period % stride:
            stride += 1
    q, w, min_w, max_q, status = _rk4(
        params.omega_c, omega_s, params.delta_c, delta_beat, params.decay_ratio,
        h, n_settle, n_record, stride,
    )
    if status:
        raise StabilityError(f"|dw| exceeded {_MAX_DW} in one step of size {h:g}")
    tau = (n_settle + stride * np.arange(q.size)) * h
    return BlochSeries(tau=tau, q=q, w=w, step=h, min_w=float(min_w), max_abs_q=float(max_q))


def demodulate_first_harmonic(series, delta_beat: float, *, rtol: float = 1e-9) -> complex:
    """Component ``c`` of ``q`` oscillating as ``c exp(-i delta_beat tau)``.

    ``series`` is a :class:`BlochSeries` or a ``(tau, q)`` pair on a uniform
    grid whose span is an integer number (>= 2) of beat periods. Uses the
    trapezoid rule, which for periodic samples is exact for every harmonic
    below the Nyquist limit.
    """
    tau, q = (series.tau, series.q) if isinstance(series, BlochSeries) else series
    tau = np.asarray(tau, dtype=float)
    q = np.asarray(q, dtype=complex)
    if delta_beat == 0.0:
        raise ZeroBeatError("beat detuning is zero")
    span = tau[-1] - tau[0]
    periods = span * abs(delta_beat) / (2.0 * math.pi)
    if round(periods) < 2 or abs(periods - round(periods)) > rtol * max(1.0, periods):
        raise LeakageError(f"window spans {periods:.12g} beat periods; need an integer >= 2")
    integrand = q * np.exp(1j * delta_beat * tau)
    return complex(np.trapezoid(integrand, tau) / span)


def oracle_susceptibility(params: SystemParams, probe: ProbeDetuning,
                          cfg: OracleConfig = OracleConfig()) -> ComplexSusceptibility:
    """Probe susceptibility ``q1 / omega_s`` from the time-domain integration."""
    series = integrate_bloch(params, probe, cfg)
    q1 = demodulate_first_harmonic(series, probe.beat(params))
    return ComplexSusceptibility.from_complex(q1 / cfg.omega_s)
