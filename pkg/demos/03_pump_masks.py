"""
Pump masks as images
====================

Writes the azimuthal pump intensity for l = 0, 1, 2, 4 and a charge-one fork
grating as PGM files into ./demo_masks.
"""
import os

import numpy as np

from cposlm import AzimuthalPumpProfile, ForkGratingSpec, RasterGrid, render_fork_mask
from cposlm import render_pump_intensity
from cposlm.io import write_raster_pgm

out = "demo_masks"
os.makedirs(out, exist_ok=True)
grid = RasterGrid(512, 40e-6)

for l in (0, 1, 2, 4):
    image = render_pump_intensity(AzimuthalPumpProfile(winding_l=l), grid,
                                  aperture_radius=9e-3)
    write_raster_pgm(image, os.path.join(out, f"pump_l{l}.pgm"))
    inside = image.values[image.values > 0]
    print(f"l = {l}: max/min intensity in aperture {inside.max() / inside.min():.3f}")

# ten pixels per fringe on the full 1024 raster
fork_grid = RasterGrid(1024, 40e-6)
fork = render_fork_mask(ForkGratingSpec(charge_p=1, period=400e-6), fork_grid)
write_raster_pgm(fork, os.path.join(out, "fork_p1.pgm"), mapping="binary")
counts = [int(np.count_nonzero(np.diff(fork.values[r].astype(int)))) for r in (256, 768)]
print(f"fork transitions above / below the center: {counts}")
