import math

import numpy as np
import pytest

from cposlm import (
    OracleConfig,
    ProbeDetuning,
    SystemParams,
    demodulate_first_harmonic,
    integrate_bloch,
    oracle_susceptibility,
    population_inversion,
    susceptibility,
)
from cposlm.errors import LeakageError, ParameterError, StabilityError, ZeroBeatError

BEAT = 0.37


def tones(coeffs, periods=4, per_period=400):
    tau = np.arange(periods * per_period + 1) * (2 * math.pi / BEAT) / per_period
    q = sum(c * np.exp(-1j * k * BEAT * tau) for k, c in coeffs.items())
    return tau, q


class TestDemodulation:
    def test_single_tone(self):
        assert demodulate_first_harmonic(tones({1: 0.3 - 0.2j}), BEAT) == pytest.approx(0.3 - 0.2j, abs=1e-15)

    def test_constant_rejected(self):
        assert abs(demodulate_first_harmonic(tones({0: 1.7 + 0.4j}), BEAT)) < 1e-15

    def test_second_harmonic_rejected(self):
        assert abs(demodulate_first_harmonic(tones({2: 1.0, -1: 0.5j}), BEAT)) < 1e-15

    def test_leakage(self):
        tau, q = tones({1: 1.0})
        with pytest.raises(LeakageError):
            demodulate_first_harmonic((tau[:-50], q[:-50]), BEAT)

    def test_too_short(self):
        tau, q = tones({1: 1.0}, periods=1)
        with pytest.raises(LeakageError):
            demodulate_first_harmonic((tau, q), BEAT)


class TestIntegration:
    def test_config_validation(self):
        for kw in (dict(omega_s=0), dict(settle_time=-1), dict(demod_periods=1), dict(step=0)):
            with pytest.raises(ParameterError):
                OracleConfig(**kw)

    def test_zero_beat(self, reference):
        with pytest.raises(ZeroBeatError):
            integrate_bloch(reference, ProbeDetuning(-reference.delta_c))

    def test_no_field(self):
        series = integrate_bloch(SystemParams(omega_c=0.0), ProbeDetuning(0.5), omega_s=0.0)
        assert np.all(series.q == 0) and np.all(series.w == -1)

    def test_pump_only_relaxes_to_w0(self, reference, on_resonance):
        series = integrate_bloch(reference, on_resonance, omega_s=0.0)
        assert np.max(np.abs(series.w - population_inversion(reference))) < 1e-6
        assert series.w[-1] == pytest.approx(-0.052756, abs=1e-6)

    def test_linear_response_oscillation(self, reference, on_resonance):
        cfg = OracleConfig()
        series = integrate_bloch(reference, on_resonance, cfg)
        swing = np.max(np.abs(series.w - population_inversion(reference)))
        assert 0 < swing < 100 * cfg.omega_s

    def test_physical_bounds(self):
        for omega_c in (0.3, 1.0, 3.0):
            series = integrate_bloch(SystemParams(omega_c=omega_c, delta_c=0.05), ProbeDetuning(0.3))
            assert series.min_w >= -1 - 1e-6
            assert series.max_abs_q <= 0.5 + 1e-6
            assert np.all(series.w <= 0.01)

    def test_stability_guard(self):
        with pytest.raises(StabilityError):
            integrate_bloch(SystemParams(omega_c=50.0), ProbeDetuning(0.5),
                            OracleConfig(step=0.5, settle_time=10.0))

    def test_window_is_whole_periods(self, reference):
        probe = ProbeDetuning(0.3)
        series = integrate_bloch(reference, probe)
        periods = (series.tau[-1] - series.tau[0]) * probe.beat(reference) / (2 * math.pi)
        assert periods == pytest.approx(8, abs=1e-9)


class TestOracleSusceptibility:
    def test_lorentzian(self):
        chi = oracle_susceptibility(SystemParams(omega_c=0.0), ProbeDetuning(0.5))
        assert abs(chi.value - (-0.4 + 0.8j)) < 1e-6

    def test_reference_point(self, reference, on_resonance):
        chi = oracle_susceptibility(reference, on_resonance).value
        exact = susceptibility(reference, on_resonance).value
        assert abs(chi - exact) <= 1e-3 * abs(exact)
        assert chi.real == pytest.approx(0.005479, rel=1e-3)
        assert chi.imag == pytest.approx(0.003070, rel=1e-3)

    @pytest.mark.parametrize("omega_c, ds", [(0.0, 0.5), (0.3, 0.0), (1.0, -1.0)])
    def test_probe_halving(self, omega_c, ds):
        params = SystemParams(omega_c=omega_c)
        full = oracle_susceptibility(params, ProbeDetuning(ds)).value
        half = oracle_susceptibility(params, ProbeDetuning(ds), OracleConfig(omega_s=2.5e-5)).value
        assert abs(full - half) < 1e-6

    def test_step_refinement(self, reference, on_resonance):
        coarse = oracle_susceptibility(reference, on_resonance).value
        fine = oracle_susceptibility(reference, on_resonance, OracleConfig(step=0.005)).value
        assert abs(coarse - fine) < 1e-9

    def test_steady_state(self, reference):
        probe = ProbeDetuning(0.3)
        series = integrate_bloch(reference, probe, record_periods=16)
        half = series.tau.size // 2
        first = demodulate_first_harmonic((series.tau[:half + 1], series.q[:half + 1]), 0.35)
        second = demodulate_first_harmonic((series.tau[half:], series.q[half:]), 0.35)
        assert abs(first - second) < 1e-8

    def test_deterministic(self, reference):
        a = oracle_susceptibility(reference, ProbeDetuning(1.0))
        b = oracle_susceptibility(reference, ProbeDetuning(1.0))
        assert a == b
