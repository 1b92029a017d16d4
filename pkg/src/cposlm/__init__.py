"""Spatial light modulation by coherent population oscillation in quantum dots.

The closed-form pump-probe susceptibility (:mod:`cposlm.core`), its
time-domain check (:mod:`cposlm.oracle`), ensemble averaging, pump masks,
the mask-to-modulation pipeline and free-space propagation with OAM
analysis.
"""
from .core import (
    REFERENCE_POINT,
    WAVELENGTH,
    ComplexSusceptibility,
    OpticalConstants,
    ProbeDetuning,
    SystemParams,
    cpo_denominator,
    optical_constants,
    population_inversion,
    susceptibility,
    transmission,
)
from .ensemble import EnsembleSpec, averaged_susceptibility, gaussian_weight
from .masks import (
    AzimuthalPumpProfile,
    ForkGratingSpec,
    RasterGrid,
    azimuthal_rabi,
    fork_phase_function,
    render_fork_mask,
    render_pump_intensity,
    render_pump_rabi,
)
from .oracle import OracleConfig, demodulate_first_harmonic, integrate_bloch, oracle_susceptibility
from .pipeline import (
    amplitude_modulation_map,
    azimuthal_response,
    phase_modulation_map,
    required_thickness,
    transmission_profile,
)
from .propagation import (
    FieldGrid,
    OamSpectrum,
    apply_map,
    gaussian_field,
    oam_spectrum,
    propagate_angular_spectrum,
)

__version__ = "0.1.0"
