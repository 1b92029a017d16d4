"""Command-line entry point: every computed curve, image and number as a data file.

Usage::

    cposlm <command> [--config FILE] [--out DIR] [--<key> VALUE ...]

Any configuration key can be given as a flag (``--omega-c 0.5``); flags
override the file, which overrides the defaults.
"""
from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import io
from .config import KEYS, RunConfig, load_config
from .core import ProbeDetuning, chi_closed_form, susceptibility
from .ensemble import EnsembleSpec
from .errors import ConvergenceError, CpoError, OutputError
from .masks import (
    AzimuthalPumpProfile,
    ForkGratingSpec,
    RasterGrid,
    render_fork_mask,
    render_pump_intensity,
)
from .oracle import OracleConfig, oracle_susceptibility
from .pipeline import (
    amplitude_modulation_map,
    azimuthal_response,
    phase_modulation_map,
    required_thickness,
    transmission_profile,
)
from .propagation import (
    apply_map,
    gaussian_field,
    on_axis_intensity,
    oam_spectrum,
    propagate_angular_spectrum,
    rayleigh_range,
    second_moment_radius,
)
from .report import discrepancy_items, write_report

PUMP_IMAGE_WINDINGS = (0, 1, 2, 4)
ORACLE_TOLERANCE = 1e-3


def _profile(cfg: RunConfig, winding_l=None) -> AzimuthalPumpProfile:
    l = cfg.winding_l if winding_l is None else winding_l
    return AzimuthalPumpProfile(cfg.a, cfg.b, cfg.c, l)


def _grid(cfg: RunConfig) -> RasterGrid:
    return RasterGrid(cfg.grid_n, cfg.grid_pitch_m)


def _path(out, name):
    return os.path.join(out, name)


def _sigma_label(sigma):
    return io.format_number(sigma)


def cmd_spectrum(cfg, out, args=None):
    """Probe spectra around line center with the pump off and on."""
    params = cfg.system_params()
    ds = np.linspace(-cfg.spectrum_span, cfg.spectrum_span, cfg.spectrum_points)
    off = chi_closed_form(0.0, cfg.delta_c, ds, params.decay_ratio)
    on = chi_closed_form(cfg.omega_c, cfg.delta_c, ds, params.decay_ratio)
    io.write_table_csv(["delta_s", "re_chi_pump_off", "re_chi_pump_on"],
                       zip(ds, off.real, on.real), _path(out, "spectrum_re.csv"))
    io.write_table_csv(["delta_s", "im_chi_pump_off", "im_chi_pump_on"],
                       zip(ds, off.imag, on.imag), _path(out, "spectrum_im.csv"))
    return ["spectrum_re.csv", "spectrum_im.csv"]


def cmd_azimuthal(cfg, out, args=None):
    """Susceptibility around the pump mask, fixed detuning and each ensemble width."""
    params = cfg.system_params()
    probe = ProbeDetuning(cfg.delta_s)
    profile = _profile(cfg)
    tables = [("fixed", azimuthal_response(profile, params, probe, n_samples=cfg.samples))]
    for sigma in cfg.sigma_c:
        spec = EnsembleSpec(sigma, truncation=cfg.truncation, nodes=cfg.quad_nodes)
        tables.append((f"sigma_{_sigma_label(sigma)}", azimuthal_response(
            profile, params, probe, spec, cfg.samples, cfg.ensemble_convention)))
    header = ["phi", "omega_c"]
    columns = [tables[0][1].phi, tables[0][1].omega_c]
    for label, table in tables:
        header += [f"re_chi_{label}", f"im_chi_{label}"]
        columns += [table.re, table.im]
    io.write_table_csv(header, zip(*columns), _path(out, "azimuthal_response.csv"))
    return ["azimuthal_response.csv"]


def cmd_pump_image(cfg, out, args=None):
    l = getattr(args, "l", None)
    windings = [cfg.winding_l if l is None else l]
    names = []
    for l in windings:
        image = render_pump_intensity(_profile(cfg, l), _grid(cfg), cfg.aperture_m)
        name = f"pump_intensity_l{l}.pgm"
        io.write_raster_pgm(image, _path(out, name))
        names.append(name)
    return names


def cmd_fork(cfg, out, args=None):
    spec = ForkGratingSpec(cfg.fork_p, cfg.fork_period_m, cfg.aperture_m)
    mask = render_fork_mask(spec, _grid(cfg))
    name = f"fork_p{cfg.fork_p}.pgm"
    io.write_raster_pgm(mask, _path(out, name), mapping="binary")
    return [name]


def _report_items(cfg):
    return discrepancy_items(
        cfg.system_params(), _profile(cfg), ProbeDetuning(cfg.delta_s), cfg.lambda_m,
        cfg.delta_l, cfg.samples, cfg.fork_omega_c, cfg.dark_im_chi,
    )


def cmd_thickness(cfg, out, args=None):
    write_report(_report_items(cfg), _path(out, "discrepancy_report.txt"))
    return ["discrepancy_report.txt"]


def _phase_setup(cfg):
    params = cfg.system_params()
    table = azimuthal_response(_profile(cfg), params, ProbeDetuning(cfg.delta_s),
                               n_samples=cfg.samples)
    thick = required_thickness(table, cfg.lambda_m, cfg.delta_l)
    return table, thick


def _write_map(modulation, out, stem):
    io.write_raster_pgm(io.wrap_phase(modulation.phase), _path(out, f"{stem}_phase.pgm"),
                        mapping=(0.0, 2 * math.pi))
    io.write_raster_pgm(modulation.intensity_transmission,
                        _path(out, f"{stem}_transmission.pgm"), mapping=(0.0, 1.0))
    return [f"{stem}_phase.pgm", f"{stem}_transmission.pgm"]


def cmd_modulate(cfg, out, args=None):
    mode = getattr(args, "mode", None) or "phase"
    table, thick = _phase_setup(cfg)
    if mode == "phase":
        modulation = phase_modulation_map(table, thick.d, cfg.lambda_m, _grid(cfg))
        names = _write_map(modulation, out, "phase_map")
        prof = transmission_profile(table, thick.d, cfg.lambda_m)
        io.write_table_csv(
            ["phi", "omega_c", "re_chi", "im_chi", "alpha_per_m", "thickness_m",
             "lambda_m", "transmission"],
            ((p, o, r, i, a, thick.d, cfg.lambda_m, t) for p, o, r, i, a, t in zip(
                table.phi, table.omega_c, table.re, table.im, prof.alpha, prof.transmission)),
            _path(out, "phase_transmission.csv"),
        )
        return names + ["phase_transmission.csv"]
    params = cfg.system_params()
    probe = ProbeDetuning(cfg.delta_s)
    bright = params.replace(omega_c=cfg.fork_omega_c)
    dark = params.replace(omega_c=0.0)
    fork = render_fork_mask(ForkGratingSpec(cfg.fork_p, cfg.fork_period_m, cfg.aperture_m),
                            _grid(cfg))
    modulation = amplitude_modulation_map(fork, bright, dark, probe, thick.d, cfg.lambda_m)
    names = _write_map(modulation, out, "amplitude_map")
    rows = []
    for region, p, im_override in (("bright", bright, None), ("dark", dark, None),
                                   ("dark_quoted", dark, cfg.dark_im_chi)):
        chi = susceptibility(p, probe)
        im = chi.im if im_override is None else im_override
        alpha = 2 * math.pi * im / cfg.lambda_m
        rows.append((region, p.omega_c, chi.re, im, alpha, thick.d, cfg.lambda_m,
                     math.exp(-alpha * thick.d)))
    io.write_table_csv(["region", "omega_c", "re_chi", "im_chi", "alpha_per_m", "thickness_m",
                        "lambda_m", "transmission"], rows,
                       _path(out, "amplitude_transmission.csv"))
    return names + ["amplitude_transmission.csv"]


def _field_snapshots(field, out, stem):
    io.write_raster_pgm(field.intensity / field.intensity.max(),
                        _path(out, f"{stem}_intensity.pgm"), mapping=(0.0, 1.0))
    io.write_raster_pgm(io.wrap_phase(np.angle(field.amplitudes)),
                        _path(out, f"{stem}_phase.pgm"), mapping=(0.0, 2 * math.pi))
    return [f"{stem}_intensity.pgm", f"{stem}_phase.pgm"]


def cmd_propagate(cfg, out, args=None):
    """Gaussian probe through the phase map, then free space."""
    table, thick = _phase_setup(cfg)
    modulation = phase_modulation_map(table, thick.d, cfg.lambda_m, _grid(cfg))
    start = apply_map(gaussian_field(cfg.grid_n, cfg.grid_pitch_m, cfg.waist_m), modulation)
    z_r = rayleigh_range(cfg.waist_m, cfg.lambda_m)
    distance = z_r if cfg.distance_m is None else cfg.distance_m
    end = propagate_angular_spectrum(start, distance, cfg.lambda_m)
    names = _field_snapshots(start, out, "field_z0") + _field_snapshots(end, out, "field_z")
    spec0 = oam_spectrum(start, cfg.l_max)
    spec1 = oam_spectrum(end, cfg.l_max)
    rows = [(l, p0, p1) for (l, p0), (_, p1) in zip(spec0.rows(), spec1.rows())]
    rows.append(("residual", spec0.residual, spec1.residual))
    io.write_table_csv(["l", "fraction_z0", "fraction_z"], rows, _path(out, "oam_spectrum.csv"))
    summary = [
        ("distance_m", distance), ("rayleigh_range_m", z_r), ("thickness_m", thick.d),
        ("dominant_l_z0", spec0.dominant()), ("dominant_l_z", spec1.dominant()),
        ("on_axis_over_peak_z", on_axis_intensity(end)),
        ("radius_z0_m", second_moment_radius(start)), ("radius_z_m", second_moment_radius(end)),
        ("power_ratio", end.power() / start.power()),
    ]
    io.write_table_csv(["quantity", "value"], summary, _path(out, "propagation_summary.csv"))
    return names + ["oam_spectrum.csv", "propagation_summary.csv"]


def oracle_grid(cfg):
    """Grid points of the oracle comparison, skipping zero beat detuning."""
    for omega_c in cfg.oracle_omega_c_list:
        for delta_c in cfg.oracle_delta_c_list:
            for delta_s in cfg.oracle_delta_s_list:
                if delta_s + delta_c != 0:
                    yield omega_c, delta_c, delta_s


def cmd_oracle_check(cfg, out, args=None):
    oracle_cfg = OracleConfig(cfg.oracle_omega_s, cfg.oracle_settle, cfg.oracle_demod_periods,
                              cfg.oracle_step)
    rows, worst = [], 0.0
    for omega_c, delta_c, delta_s in oracle_grid(cfg):
        params = cfg.system_params(omega_c=omega_c, delta_c=delta_c)
        probe = ProbeDetuning(delta_s)
        exact = susceptibility(params, probe).value
        brute = oracle_susceptibility(params, probe, oracle_cfg).value
        err = abs(brute - exact)
        worst = max(worst, err / max(1e-3, abs(exact)))
        rows.append((omega_c, delta_c, delta_s, exact.real, exact.imag,
                     brute.real, brute.imag, err))
    io.write_table_csv(["omega_c", "delta_c", "delta_s", "re_chi_analytic", "im_chi_analytic",
                        "re_chi_oracle", "im_chi_oracle", "abs_err"], rows,
                       _path(out, "oracle_check.csv"))
    if worst > ORACLE_TOLERANCE:
        raise ConvergenceError(f"oracle disagreement {worst:.3g} exceeds {ORACLE_TOLERANCE}")
    return ["oracle_check.csv"]


def cmd_all(cfg, out, args=None):
    names = []
    names += cmd_spectrum(cfg, out)
    names += cmd_azimuthal(cfg, out)
    for l in PUMP_IMAGE_WINDINGS:
        names += cmd_pump_image(cfg, out, argparse.Namespace(l=l))
    names += cmd_fork(cfg, out)
    names += cmd_thickness(cfg, out)
    names += cmd_modulate(cfg, out, argparse.Namespace(mode="phase"))
    names += cmd_modulate(cfg, out, argparse.Namespace(mode="amplitude"))
    names += cmd_propagate(cfg, out)
    names += cmd_oracle_check(cfg, out)
    io.write_text(cfg.dump(), _path(out, "config_resolved.txt"))
    names.append("config_resolved.txt")
    io.write_manifest(out, names)
    return names + ["MANIFEST.sha256"]


COMMANDS = {
    "spectrum": (cmd_spectrum, "probe spectra with pump off/on"),
    "azimuthal": (cmd_azimuthal, "susceptibility versus azimuth (fixed and ensemble)"),
    "pump-image": (cmd_pump_image, "azimuthal pump intensity image"),
    "fork": (cmd_fork, "forked binary grating mask"),
    "thickness": (cmd_thickness, "slab thickness and discrepancy report"),
    "modulate": (cmd_modulate, "phase or amplitude modulation maps"),
    "propagate": (cmd_propagate, "propagate the modulated probe and analyse OAM"),
    "oracle-check": (cmd_oracle_check, "closed form versus time-domain Bloch integration"),
    "all": (cmd_all, "every artifact plus a hash manifest"),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("--out", default=".", help="output directory (default: .)")
    keys = common.add_argument_group("configuration overrides")
    for key, (_, _, doc) in KEYS.items():
        keys.add_argument("--" + key.replace("_", "-"), dest=f"set_{key}", metavar="V", help=doc)

    parser = argparse.ArgumentParser(prog="cposlm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "pump-image":
            p.add_argument("--l", type=int, choices=PUMP_IMAGE_WINDINGS, default=None,
                           help="winding number (default: winding_l)")
        if name == "modulate":
            p.add_argument("--mode", choices=("phase", "amplitude"), default="phase")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    overrides = {
        key: value for key in KEYS
        if (value := getattr(args, f"set_{key}", None)) is not None
    }
    try:
        cfg = load_config(args.config, overrides)
        try:
            os.makedirs(args.out, exist_ok=True)
        except OSError as err:
            raise OutputError(f"cannot create {args.out}: {err}") from err
        func = COMMANDS[args.command][0]
        for name in func(cfg, args.out, args):
            print(os.path.join(args.out, name))
    except CpoError as err:
        print(f"cposlm: error: {err}", file=sys.stderr)
        return err.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
