"""Pump-field images: azimuthal intensity masks and forked binary gratings.

Raster convention: an ``n x n`` array indexed ``[row, col]``; pixel centers
sit at ``(k + 0.5 - n/2) * pitch`` with ``x`` from the column index and ``y``
from the row index, so no pixel lies on either axis. The azimuth is
``atan2(y, x)`` mapped to ``[0, 2 pi)``, with the branch cut on the ``+x`` axis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GeometryError, ParameterError, ProfileDomainError, SamplingError

__all__ = [
    "AzimuthalPumpProfile",
    "ForkGratingSpec",
    "RasterGrid",
    "azimuthal_rabi",
    "fold_angle",
    "render_pump_rabi",
    "render_pump_intensity",
    "fork_phase_function",
    "render_fork_mask",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class AzimuthalPumpProfile:
    """Pump Rabi frequency ``sqrt(a / (b psi + c))`` repeated ``winding_l`` times."""

    a: float = 1.0
    b: float = 1.0
    c: float = 1.0
    winding_l: int = 1

    def __post_init__(self):
        if int(self.winding_l) != self.winding_l or self.winding_l < 0:
            raise ParameterError("winding_l must be a non-negative integer")
        if not self.a > 0:
            raise ProfileDomainError("a must be positive")
        if not (self.c > 0 and self.b * TWO_PI + self.c > 0):
            raise ProfileDomainError("b*psi + c must stay positive on [0, 2pi]")

    @property
    def rabi_end(self) -> float:
        """Limit of the Rabi frequency as the fold angle approaches ``2 pi``."""
        if self.winding_l == 0:
            return math.sqrt(self.a / self.c)
        return math.sqrt(self.a / (self.b * TWO_PI + self.c))


@dataclass(frozen=True)
class ForkGratingSpec:
    """Forked grating of topological charge ``charge_p`` and far-field period [m]."""

    charge_p: int = 1
    period: float = 400e-6
    aperture_radius: float | None = None

    def __post_init__(self):
        if int(self.charge_p) != self.charge_p:
            raise ParameterError("charge_p must be an integer")
        if not self.period > 0:
            raise ParameterError("grating period must be positive")


@dataclass
class RasterGrid:
    """Square raster with its origin at the center."""

    n: int
    pitch: float
    values: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2 or self.n % 2:
            raise GeometryError("raster size must be an even integer >= 2")
        if not self.pitch > 0:
            raise GeometryError("pitch must be positive")
        if self.values is None:
            self.values = np.zeros((self.n, self.n))
        elif self.values.shape != (self.n, self.n):
            raise GeometryError(f"values shape {self.values.shape} != ({self.n}, {self.n})")

    def axis(self) -> np.ndarray:
        return (np.arange(self.n) + 0.5 - self.n / 2) * self.pitch

    def coordinates(self):
        """``x, y, r, phi`` arrays, ``phi`` in ``[0, 2 pi)``."""
        x = self.axis()[None, :]
        y = self.axis()[:, None]
        x, y = np.broadcast_arrays(x, y)
        return x, y, np.hypot(x, y), np.mod(np.arctan2(y, x), TWO_PI)

    def like(self, values) -> "RasterGrid":
        return RasterGrid(self.n, self.pitch, np.asarray(values))


def fold_angle(phi, winding_l: int):
    """Angle within the current fold, ``(l phi) mod 2 pi``; zero for ``l = 0``."""
    phi = np.asarray(phi, dtype=float)
    if winding_l == 0:
        return np.zeros_like(phi)
    return np.mod(winding_l * phi, TWO_PI)


def azimuthal_rabi(profile: AzimuthalPumpProfile, phi):
    """Pump Rabi frequency at azimuth ``phi`` (scalar or array)."""
    psi = fold_angle(phi, profile.winding_l)
    denom = profile.b * psi + profile.c
    if np.any(denom <= 0):
        raise ProfileDomainError("b*psi + c <= 0")
    out = np.sqrt(profile.a / denom)
    return float(out) if out.ndim == 0 else out


def _aperture(grid: RasterGrid, radius):
    _, _, r, _ = grid.coordinates()
    if radius is None:
        return np.ones_like(r, dtype=bool)
    return r <= radius


def render_pump_rabi(profile: AzimuthalPumpProfile, grid: RasterGrid,
                     aperture_radius: float | None = None) -> RasterGrid:
    """Per-pixel pump Rabi frequency (zero outside the aperture)."""
    _, _, _, phi = grid.coordinates()
    rabi = np.where(_aperture(grid, aperture_radius), azimuthal_rabi(profile, phi), 0.0)
    return grid.like(rabi)


def render_pump_intensity(profile: AzimuthalPumpProfile, grid: RasterGrid,
                          aperture_radius: float | None = None) -> RasterGrid:
    """Pump intensity image (square of the Rabi frequency), peak normalized to 1."""
    intensity = render_pump_rabi(profile, grid, aperture_radius).values ** 2
    peak = intensity.max()
    return grid.like(intensity / peak if peak > 0 else intensity)


def fork_phase_function(spec: ForkGratingSpec, r, phi):
    """``p phi / pi - (2 r / D) cos phi``; fringe boundaries are its integer level sets."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ParameterError("r must be non-negative")
    out = spec.charge_p * np.asarray(phi) / math.pi - 2.0 * r / spec.period * np.cos(phi)
    return float(out) if np.ndim(out) == 0 else out


def render_fork_mask(spec: ForkGratingSpec, grid: RasterGrid) -> RasterGrid:
    """Binary fork grating: 1 (transparent) where ``floor(f)`` is even, else 0."""
    if spec.period < 4 * grid.pitch:
        raise SamplingError(
            f"grating period {spec.period:g} m is below 4 pixels of {grid.pitch:g} m"
        )
    _, _, r, phi = grid.coordinates()
    f = fork_phase_function(spec, r, phi)
    mask = (np.floor(f).astype(np.int64) % 2 == 0) & _aperture(grid, spec.aperture_radius)
    return grid.like(mask.astype(np.uint8))
