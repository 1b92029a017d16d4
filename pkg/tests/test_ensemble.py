import math

import numpy as np
import pytest
from scipy.integrate import quad, simpson

from cposlm import EnsembleSpec, ProbeDetuning, SystemParams, averaged_susceptibility, susceptibility
from cposlm.ensemble import FIXED_PROBE, average_chi, gaussian_weight
from cposlm.errors import ConvergenceError, ParameterError


def reference_average(params, sigma, delta_s, fixed_beat=True):
    """Adaptive quadrature over the full real line, independent of the Simpson path."""
    center = params.delta_c
    beat = delta_s + center

    def chi(g):
        ds = beat - g if fixed_beat else delta_s
        return susceptibility(params.replace(delta_c=g), ProbeDetuning(ds)).value

    def weight(g):
        return math.exp(-0.5 * ((g - center) / sigma) ** 2) / (math.sqrt(2 * math.pi) * sigma)

    lo, hi = center - 12 * sigma, center + 12 * sigma
    re = quad(lambda g: weight(g) * chi(g).real, lo, hi, epsabs=1e-14, epsrel=1e-12, limit=400)[0]
    im = quad(lambda g: weight(g) * chi(g).imag, lo, hi, epsabs=1e-14, epsrel=1e-12, limit=400)[0]
    return complex(re, im)


class TestSpec:
    @pytest.mark.parametrize("kw", [dict(sigma_c=-0.1), dict(sigma_c=0.1, truncation=3),
                                    dict(sigma_c=0.1, nodes=32), dict(sigma_c=0.1, nodes=100)])
    def test_invalid(self, kw):
        with pytest.raises(ParameterError):
            EnsembleSpec(**kw)


class TestGaussianWeight:
    def test_peak(self):
        spec = EnsembleSpec(0.15, center=0.05)
        assert gaussian_weight(spec, 0.05) == pytest.approx(1 / (math.sqrt(2 * math.pi) * 0.15))
        assert gaussian_weight(spec, 0.05) == pytest.approx(2.6596, abs=1e-4)

    def test_one_sigma(self):
        spec = EnsembleSpec(0.15, center=0.05)
        assert gaussian_weight(spec, 0.2) == pytest.approx(gaussian_weight(spec, 0.05) * math.exp(-0.5))

    def test_normalization(self):
        spec = EnsembleSpec(0.15, center=0.05)
        grid = np.linspace(0.05 - 0.9, 0.05 + 0.9, 257)
        total = simpson(gaussian_weight(spec, grid), x=grid)
        # the quadrature is exact; what is missing is the mass beyond 6 sigma
        assert total == pytest.approx(1 - math.erfc(6 / math.sqrt(2)), abs=1e-13)
        assert 1 - 1e-6 <= total <= 1 + 1e-12

    def test_degenerate(self):
        with pytest.raises(ParameterError):
            gaussian_weight(EnsembleSpec(0.0, center=0.0), 0.0)


class TestAverage:
    def test_delta_limit(self, reference, on_resonance):
        point = susceptibility(reference, on_resonance).value
        avg = averaged_susceptibility(reference, EnsembleSpec(1e-9), on_resonance).value
        assert abs(avg - point) <= 1e-6 * abs(point)

    def test_zero_width_is_point(self, reference, on_resonance):
        avg = averaged_susceptibility(reference, EnsembleSpec(0.0), on_resonance)
        assert avg == susceptibility(reference, on_resonance)

    def test_broadened_lorentzian_is_lower(self, on_resonance):
        params = SystemParams(omega_c=0.0, delta_c=0.05)
        avg = averaged_susceptibility(params, EnsembleSpec(0.15), on_resonance).value
        ref = reference_average(params, 0.15, 0.0)
        assert avg.imag < 1
        assert avg == pytest.approx(ref, rel=1e-9)
        dense = averaged_susceptibility(params, EnsembleSpec(0.15, nodes=4097), on_resonance).value
        assert avg == pytest.approx(dense, rel=1e-9)

    @pytest.mark.parametrize("sigma", [0.05, 0.15])
    @pytest.mark.parametrize("omega_c", [0.3, 1.0])
    def test_matches_adaptive_reference(self, omega_c, sigma, on_resonance):
        params = SystemParams(omega_c=omega_c, delta_c=0.05)
        avg = averaged_susceptibility(params, EnsembleSpec(sigma), on_resonance).value
        assert avg == pytest.approx(reference_average(params, sigma, 0.0), rel=1e-7)

    def test_fixed_probe_convention(self, reference):
        got = averaged_susceptibility(reference, EnsembleSpec(0.15), ProbeDetuning(0.2),
                                      convention=FIXED_PROBE).value
        ref = reference_average(reference, 0.15, 0.2, fixed_beat=False)
        assert got == pytest.approx(ref, rel=1e-7)

    def test_conventions_differ(self, reference, on_resonance):
        a = averaged_susceptibility(reference, EnsembleSpec(0.15), on_resonance)
        b = averaged_susceptibility(reference, EnsembleSpec(0.15), on_resonance, FIXED_PROBE)
        assert a != b

    def test_node_doubling(self, reference, on_resonance):
        for sigma in (0.05, 0.15):
            a = averaged_susceptibility(reference, EnsembleSpec(sigma), on_resonance)
            b = averaged_susceptibility(reference, EnsembleSpec(sigma, nodes=513), on_resonance)
            assert abs(a.re - b.re) < 1e-8 and abs(a.im - b.im) < 1e-8

    def test_constant_integrand(self, monkeypatch, reference):
        import cposlm.ensemble as ens

        monkeypatch.setattr(ens, "chi_closed_form", lambda o, g, s, r: np.full(
            np.broadcast_shapes(np.shape(o), np.shape(g)), 0.25 - 0.5j))
        got = average_chi(0.3, reference, EnsembleSpec(0.15), 0.0)
        assert got == 0.25 - 0.5j

    def test_vectorized_over_pump(self, reference):
        omegas = np.array([0.3, 0.5, 1.0])
        arr = average_chi(omegas, reference, EnsembleSpec(0.05), 0.0)
        for o, v in zip(omegas, arr):
            single = averaged_susceptibility(reference.replace(omega_c=o), EnsembleSpec(0.05),
                                             ProbeDetuning(0.0)).value
            assert v == pytest.approx(single, rel=1e-14)

    def test_non_convergence_detected(self, reference):
        # a width far beyond the quadrature resolution of a narrow CPO hole
        with pytest.raises(ConvergenceError):
            average_chi(0.3, reference.replace(t1=3e-10), EnsembleSpec(40.0, nodes=33), 0.0)
