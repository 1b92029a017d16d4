import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cposlm import (
    AzimuthalPumpProfile,
    EnsembleSpec,
    ForkGratingSpec,
    ProbeDetuning,
    RasterGrid,
    SystemParams,
    amplitude_modulation_map,
    azimuthal_response,
    phase_modulation_map,
    render_fork_mask,
    required_thickness,
    susceptibility,
    transmission_profile,
)
from cposlm.errors import FlatResponseError, ParameterError
from cposlm.pipeline import (
    AzimuthalResponseTable,
    azimuthal_phase,
    dark_fringe_extinction,
)

LAMBDA = 530e-9
TWO_PI = 2 * math.pi


def linear_table(step, winding_l=1, n=256, im=0.0):
    """Table whose Re chi rises linearly by ``step`` across a fold."""
    phi = TWO_PI * np.arange(n) / n
    psi = np.mod(winding_l * phi, TWO_PI)
    chi = step * psi / TWO_PI + 1j * im
    return AzimuthalResponseTable(phi, np.ones(n), chi.astype(complex), winding_l,
                                  1.0, complex(step, im))


@pytest.fixture(scope="module")
def reference_table():
    return azimuthal_response(AzimuthalPumpProfile(), SystemParams())


class TestResponseTable:
    def test_endpoints(self, reference_table):
        assert reference_table.omega_c[0] == 1.0
        assert reference_table.omega_end == pytest.approx(math.sqrt(1 / (TWO_PI + 1)), rel=1e-15)
        ref = susceptibility(SystemParams(omega_c=reference_table.omega_end), ProbeDetuning(0)).value
        assert reference_table.chi_end == ref

    def test_end_limit_value(self, reference_table):
        assert reference_table.re[0] == pytest.approx(-5.99e-5, abs=5e-8)
        # three-figure value 2.20e-3; the closed form gives 2.2212e-3
        assert reference_table.chi_end.real == pytest.approx(2.2e-3, rel=0.01)

    def test_too_few_samples(self):
        with pytest.raises(ParameterError):
            azimuthal_response(AzimuthalPumpProfile(), SystemParams(), n_samples=16)

    def test_ensemble_changes_response(self, reference_table):
        avg = azimuthal_response(AzimuthalPumpProfile(), SystemParams(),
                                 ensemble=EnsembleSpec(0.05), n_samples=256)
        assert avg.ensemble.sigma_c == 0.05
        assert not np.allclose(avg.chi, reference_table.chi[::16])


class TestThickness:
    def test_synthetic_inversion(self):
        result = required_thickness(linear_table(0.01493), LAMBDA, 1)
        assert result.d * 1e6 == pytest.approx(71.0, abs=0.1)
        assert result.direction == 1

    @pytest.mark.parametrize("dl", [1, 2, 3])
    def test_linear_in_delta_l(self, dl):
        one = required_thickness(linear_table(0.01), LAMBDA, 1).d
        assert required_thickness(linear_table(0.01), LAMBDA, dl).d == pytest.approx(dl * one, rel=1e-15)

    def test_negative_step_flips_direction(self):
        result = required_thickness(linear_table(-0.01493), LAMBDA)
        assert result.direction == -1 and result.d == pytest.approx(71.0e-6, abs=1e-7)

    def test_flat(self):
        with pytest.raises(FlatResponseError):
            required_thickness(linear_table(0.0), LAMBDA)

    def test_reference_point(self, reference_table):
        result = required_thickness(reference_table, LAMBDA, 1)
        step = result.re_chi_2pi - result.re_chi_0
        assert result.d == pytest.approx(2 * LAMBDA / step, rel=1e-15)
        assert 0 < result.d < 1e-2
        assert "71" in result.discrepancy_note


class TestPhase:
    @pytest.mark.parametrize("dl", [1, 2])
    def test_winding(self, reference_table, dl):
        d = required_thickness(reference_table, LAMBDA, dl).d
        assert azimuthal_phase(reference_table, d, LAMBDA, 0.0) == 0.0
        assert abs(azimuthal_phase(reference_table, d, LAMBDA, TWO_PI) - TWO_PI * dl) < 1e-9

    @pytest.mark.parametrize("l", [1, 2, 4])
    def test_winding_scales_with_folds(self, l):
        table = azimuthal_response(AzimuthalPumpProfile(winding_l=l), SystemParams(), n_samples=1024)
        d = required_thickness(table, LAMBDA).d
        assert azimuthal_phase(table, d, LAMBDA, TWO_PI) == pytest.approx(TWO_PI * l, abs=1e-9)

    def test_uniform_pump_no_phase(self):
        table = azimuthal_response(AzimuthalPumpProfile(winding_l=0), SystemParams(), n_samples=64)
        phases = azimuthal_phase(table, 100e-6, LAMBDA, np.linspace(0, TWO_PI, 17))
        assert np.all(phases == 0)

    def test_linear_table_gives_ramp(self):
        table = linear_table(0.01493, n=512)
        d = required_thickness(table, LAMBDA).d
        phi = np.linspace(0, TWO_PI, 101)[:-1]
        assert np.allclose(azimuthal_phase(table, d, LAMBDA, phi), phi, atol=1e-12)

    @settings(max_examples=50)
    @given(st.floats(0, TWO_PI, exclude_max=True), st.floats(0, TWO_PI, exclude_max=True))
    def test_monotone_for_monotone_response(self, a, b):
        table = linear_table(0.01, n=128)
        lo, hi = sorted((a, b))
        assert azimuthal_phase(table, 100e-6, LAMBDA, lo) <= azimuthal_phase(table, 100e-6, LAMBDA, hi)

    def test_interpolation_converged(self):
        coarse = azimuthal_response(AzimuthalPumpProfile(), SystemParams(), n_samples=4096)
        fine = azimuthal_response(AzimuthalPumpProfile(), SystemParams(), n_samples=8192)
        d = required_thickness(coarse, LAMBDA).d
        grid = RasterGrid(128, 40e-6)
        a = phase_modulation_map(coarse, d, LAMBDA, grid).phase
        b = phase_modulation_map(fine, d, LAMBDA, grid).phase
        assert np.max(np.abs(a - b)) < 1e-6


class TestPhaseMap:
    def test_map_matches_pointwise(self, reference_table):
        d = required_thickness(reference_table, LAMBDA).d
        grid = RasterGrid(32, 1e-4)
        mod = phase_modulation_map(reference_table, d, LAMBDA, grid)
        _, _, _, phi = grid.coordinates()
        assert np.allclose(mod.phase, azimuthal_phase(reference_table, d, LAMBDA, phi), atol=1e-14)
        assert np.allclose(np.angle(mod.transmittance * np.exp(-1j * mod.phase)), 0, atol=1e-12)
        assert not mod.has_gain

    def test_amplitude_follows_absorption(self, reference_table):
        d = required_thickness(reference_table, LAMBDA).d
        mod = phase_modulation_map(reference_table, d, LAMBDA, RasterGrid(32, 1e-4))
        t = mod.intensity_transmission
        assert 0 < t.min() < t.max() <= 1

    def test_rejects_bad_thickness(self, reference_table):
        with pytest.raises(ParameterError):
            phase_modulation_map(reference_table, 0.0, LAMBDA, RasterGrid(8, 1.0))

    def test_gain_flagged(self):
        mod = phase_modulation_map(linear_table(0.01, im=-0.1), 1e-6, LAMBDA, RasterGrid(8, 1.0))
        assert mod.has_gain and mod.intensity_transmission.max() > 1


class TestAmplitudeMap:
    def setup_method(self):
        self.fork = render_fork_mask(ForkGratingSpec(1, 10.0), RasterGrid(64, 1.0))

    def test_bright_fringes_transparent(self):
        mod = amplitude_modulation_map(self.fork, SystemParams(omega_c=1.0),
                                       SystemParams(omega_c=0.0), ProbeDetuning(0), 71e-6)
        t = mod.intensity_transmission
        assert np.all(t[self.fork.values == 1] > 0.99)

    def test_contrast(self):
        mod = amplitude_modulation_map(self.fork, SystemParams(omega_c=1.0),
                                       SystemParams(omega_c=0.0), ProbeDetuning(0), 50e-6)
        t = mod.intensity_transmission
        assert t[self.fork.values == 0].max() / t[self.fork.values == 1].min() < 1e-100

    def test_quoted_dark_absorption(self):
        mod = amplitude_modulation_map(self.fork, SystemParams(omega_c=1.0),
                                       SystemParams(omega_c=0.0), ProbeDetuning(0), 71e-6,
                                       dark_im_chi=0.4)
        dark = mod.intensity_transmission[self.fork.values == 0]
        assert np.allclose(-np.log(dark), dark_fringe_extinction(71e-6, LAMBDA, 0.4), rtol=1e-12)

    def test_preconditions(self):
        with pytest.raises(ParameterError):
            amplitude_modulation_map(self.fork, SystemParams(omega_c=1.0),
                                     SystemParams(omega_c=0.1), ProbeDetuning(0), 1e-6)
        with pytest.raises(ParameterError):
            amplitude_modulation_map(self.fork, SystemParams(omega_c=0.01),
                                     SystemParams(omega_c=0.0), ProbeDetuning(0), 1e-6)


class TestTransmissionProfile:
    def test_zero_thickness(self, reference_table):
        prof = transmission_profile(reference_table, 0.0)
        assert np.all(prof.transmission == 1.0) and prof.fraction_above == 1.0

    def test_unpumped_depth(self):
        table = azimuthal_response(AzimuthalPumpProfile(a=1e-30), SystemParams(), n_samples=64)
        prof = transmission_profile(table, 71e-6, LAMBDA)
        # Im chi -> 1 without pump, so alpha d = 2 pi d / lambda
        assert prof.minimum == pytest.approx(math.exp(-TWO_PI * 71e-6 / LAMBDA), rel=1e-6)

    def test_recomputable(self, reference_table):
        d = required_thickness(reference_table, LAMBDA).d
        prof = transmission_profile(reference_table, d, LAMBDA)
        recomputed = np.exp(-TWO_PI * reference_table.im / LAMBDA * d)
        assert np.max(np.abs(prof.transmission - recomputed)) < 1e-12
        assert 0 <= prof.fraction_above <= 1

    def test_negative_thickness(self, reference_table):
        with pytest.raises(ParameterError):
            transmission_profile(reference_table, -1.0)


class TestDarkFringe:
    def test_quoted_depth(self):
        assert 329 <= dark_fringe_extinction(71e-6, LAMBDA, 0.4) <= 339
