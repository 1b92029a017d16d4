"""Scalar free-space propagation and azimuthal (OAM) mode analysis."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import fft
from scipy.ndimage import map_coordinates

from .errors import GeometryError, ParameterError
from .masks import RasterGrid

__all__ = [
    "FieldGrid",
    "OamSpectrum",
    "gaussian_field",
    "apply_map",
    "propagate_angular_spectrum",
    "oam_spectrum",
    "second_moment_radius",
    "on_axis_intensity",
    "rayleigh_range",
]

ANGULAR_SAMPLES = 512


@dataclass
class FieldGrid:
    """Complex scalar field on a square, power-of-two grid centered on the axis."""

    n: int
    pitch: float
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n < 2 or self.n & (self.n - 1):
            raise GeometryError("field grid size must be a power of two")
        if not self.pitch > 0:
            raise GeometryError("pitch must be positive")
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (self.n, self.n):
            raise GeometryError("amplitudes do not match the grid size")
        if not np.all(np.isfinite(self.amplitudes)):
            raise ParameterError("non-finite field values")

    @property
    def raster(self) -> RasterGrid:
        return RasterGrid(self.n, self.pitch)

    @property
    def intensity(self):
        return np.abs(self.amplitudes) ** 2

    def power(self) -> float:
        return float(self.intensity.sum() * self.pitch**2)

    def with_amplitudes(self, amplitudes) -> "FieldGrid":
        return FieldGrid(self.n, self.pitch, amplitudes)


@dataclass
class OamSpectrum:
    """Power fractions in azimuthal orders ``-l_max .. l_max``."""

    l_max: int
    fractions: np.ndarray

    @property
    def orders(self):
        return np.arange(-self.l_max, self.l_max + 1)

    @property
    def residual(self) -> float:
        """Power outside the reported orders."""
        return float(max(0.0, 1.0 - self.fractions.sum()))

    def __getitem__(self, order):
        return float(self.fractions[order + self.l_max])

    def dominant(self) -> int:
        return int(self.orders[np.argmax(self.fractions)])

    def rows(self):
        return list(zip(self.orders, self.fractions))


def rayleigh_range(waist: float, lambda_m: float) -> float:
    return math.pi * waist**2 / lambda_m


def gaussian_field(n: int, pitch: float, waist: float) -> FieldGrid:
    """Unit-peak Gaussian ``exp(-r^2 / w^2)`` with flat phase."""
    grid = RasterGrid(n, pitch)
    if waist < 4 * pitch:
        raise GeometryError(f"waist {waist:g} m is below 4 pixels")
    if waist > n * pitch / 4:
        raise GeometryError(f"waist {waist:g} m exceeds a quarter of the grid extent")
    _, _, r, _ = grid.coordinates()
    return FieldGrid(n, pitch, np.exp(-((r / waist) ** 2)).astype(complex))


def apply_map(field: FieldGrid, modulation) -> FieldGrid:
    """Thin-element transmission: multiply by the per-pixel transmittance."""
    if modulation.n != field.n or not math.isclose(modulation.pitch, field.pitch):
        raise GeometryError("modulation map and field grids differ")
    return field.with_amplitudes(field.amplitudes * modulation.transmittance)


def propagate_angular_spectrum(field: FieldGrid, distance: float, lambda_m: float) -> FieldGrid:
    """Exact scalar propagation over ``distance``; evanescent waves are dropped."""
    if not lambda_m > 0:
        raise ParameterError("wavelength must be positive")
    if distance == 0:
        return field.with_amplitudes(field.amplitudes.copy())
    k = 2.0 * math.pi / lambda_m
    kxy = 2.0 * math.pi * fft.fftfreq(field.n, d=field.pitch)
    kz2 = k**2 - kxy[None, :] ** 2 - kxy[:, None] ** 2
    propagating = kz2 > 0
    kz = np.sqrt(np.where(propagating, kz2, 0.0))
    # subtract the carrier k z: a global phase that would otherwise cost precision
    transfer = np.where(propagating, np.exp(1j * distance * (kz - k)), 0.0)
    spectrum = fft.fft2(field.amplitudes)
    return field.with_amplitudes(fft.ifft2(spectrum * transfer))


def second_moment_radius(field: FieldGrid) -> float:
    """Beam radius ``sqrt(2 <r^2>)`` about the intensity centroid.

    Equals the ``1/e^2`` intensity radius for a Gaussian beam.
    """
    x, y, _, _ = field.raster.coordinates()
    weight = field.intensity
    total = weight.sum()
    cx = (weight * x).sum() / total
    cy = (weight * y).sum() / total
    r2 = (weight * ((x - cx) ** 2 + (y - cy) ** 2)).sum() / total
    return math.sqrt(2.0 * r2)


def on_axis_intensity(field: FieldGrid) -> float:
    """Intensity on the optical axis relative to the peak intensity.

    The axis falls between the four central pixels; the field there is
    taken as their mean, which cancels a charge-one vortex to first order.
    """
    h = field.n // 2
    center = field.amplitudes[h - 1:h + 1, h - 1:h + 1].mean()
    return float(abs(center) ** 2 / field.intensity.max())


def oam_spectrum(field: FieldGrid, l_max: int, samples: int = ANGULAR_SAMPLES,
                 order: int = 3) -> OamSpectrum:
    """Azimuthal decomposition on rings one pixel apart.

    Each ring is sampled at ``samples`` angles by spline interpolation of
    the given ``order`` (3: cubic, 1: bilinear) and Fourier transformed;
    ``P_l = sum_r |c_l(r)|^2 r / sum_r <|E|^2>_ring r``.
    """
    if l_max < 1:
        raise ParameterError("l_max must be at least 1")
    if samples < 2 * l_max + 1:
        raise ParameterError("too few angular samples for l_max")
    half = field.n / 2
    radii = (np.arange(1, int(half) - 1)) * 1.0
    theta = 2.0 * math.pi * np.arange(samples) / samples
    # pixel index of physical coordinate u is u / pitch + n/2 - 0.5
    cols = radii[:, None] * np.cos(theta)[None, :] + half - 0.5
    rows = radii[:, None] * np.sin(theta)[None, :] + half - 0.5
    coords = np.stack([rows.ravel(), cols.ravel()])
    ring = (
        map_coordinates(field.amplitudes.real, coords, order=order)
        + 1j * map_coordinates(field.amplitudes.imag, coords, order=order)
    ).reshape(radii.size, samples)
    coeffs = fft.fft(ring, axis=1) / samples  # c_l at index l (mod samples), e^{-il theta}
    ring_power = (np.abs(ring) ** 2).mean(axis=1)
    total = (ring_power * radii).sum()
    if total <= 0:
        raise ParameterError("field has no power on the analysis rings")
    orders = np.arange(-l_max, l_max + 1)
    fractions = ((np.abs(coeffs[:, orders % samples]) ** 2) * radii[:, None]).sum(axis=0) / total
    return OamSpectrum(l_max=l_max, fractions=fractions)
