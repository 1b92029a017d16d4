"""Run configuration: ``key = value`` files with command-line overrides.

Every key has a default; where the reference configuration fixes a value
(lifetimes, pump strength and detuning, wavelength, mask parameters) that
value is the default.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, fields

from .core import SystemParams
from .errors import ConfigError, CpoError
from .masks import AzimuthalPumpProfile

__all__ = ["RunConfig", "KEYS", "load_config", "parse_value"]

AUTO = "auto"


def _float(text):
    value = float(text)
    if not math.isfinite(value):
        raise ValueError("must be finite")
    return value


def _int(text):
    value = float(text)
    if value != int(value):
        raise ValueError("must be an integer")
    return int(value)


def _float_list(text):
    if isinstance(text, (list, tuple)):
        return tuple(_float(v) for v in text)
    parts = [p.strip() for p in str(text).split(",") if p.strip()]
    return tuple(_float(p) for p in parts)


def _optional_float(text):
    if text is None or str(text).strip().lower() in (AUTO, "none", ""):
        return None
    return _float(text)


def _choice(*options):
    def parse(text):
        text = str(text).strip()
        if text not in options:
            raise ValueError(f"must be one of {', '.join(options)}")
        return text
    return parse


def _positive(v):
    return v is None or v > 0


def _nonneg(v):
    return v is None or v >= 0


# key -> (parser, check, description)
KEYS = {
    "t1_s": (_float, _positive, "exciton lifetime T1 [s]"),
    "t2_s": (_float, _positive, "exciton dephasing time T2 [s]"),
    "omega_c": (_float, _nonneg, "pump Rabi frequency, units of 1/T2"),
    "delta_c": (_float, None, "pump-exciton detuning, units of 1/T2"),
    "delta_s": (_float, None, "probe-exciton detuning, units of 1/T2"),
    "sigma_c": (_float_list, lambda v: all(s >= 0 for s in v), "ensemble half-widths, comma list"),
    "truncation": (_float, lambda v: v >= 4, "ensemble truncation in half-widths"),
    "quad_nodes": (_int, lambda v: v >= 33 and v % 2 == 1, "ensemble quadrature nodes (odd)"),
    "ensemble_convention": (_choice("fixed_beat", "fixed_probe"), None, "what stays fixed per dot"),
    "a": (_float, _positive, "pump profile numerator"),
    "b": (_float, None, "pump profile azimuthal slope"),
    "c": (_float, _positive, "pump profile offset"),
    "winding_l": (_int, _nonneg, "pump mask winding number"),
    "lambda_m": (_float, _positive, "probe wavelength [m]"),
    "delta_l": (_int, lambda v: v >= 1, "phase winding per fold, units of 2 pi"),
    "samples": (_int, lambda v: v >= 64, "azimuthal table samples"),
    "spectrum_span": (_float, _positive, "probe detuning sweep half-range"),
    "spectrum_points": (_int, lambda v: v >= 2, "probe detuning sweep points"),
    "fork_p": (_int, None, "fork grating topological charge"),
    "fork_period_m": (_float, _positive, "fork grating period [m]"),
    "fork_omega_c": (_float, _positive, "pump Rabi frequency in bright fringes"),
    "dark_im_chi": (_float, None, "quoted dark-fringe Im chi"),
    "grid_n": (_int, lambda v: v >= 2 and v & (v - 1) == 0, "raster/field size (power of two)"),
    "grid_pitch_m": (_float, _positive, "raster pitch [m]"),
    "aperture_m": (_optional_float, _positive, "mask aperture radius [m] or auto (none)"),
    "waist_m": (_float, _positive, "probe Gaussian waist [m]"),
    "distance_m": (_optional_float, None, "propagation distance [m] or auto (one Rayleigh range)"),
    "l_max": (_int, lambda v: v >= 1, "highest OAM order reported"),
    "oracle_omega_s": (_float, _positive, "oracle probe Rabi amplitude"),
    "oracle_settle": (_optional_float, _positive, "oracle settle time or auto (30 T1/T2)"),
    "oracle_demod_periods": (_int, lambda v: v >= 2, "oracle beat periods averaged"),
    "oracle_step": (_optional_float, _positive, "oracle RK4 step or auto"),
    "oracle_omega_c_list": (_float_list, lambda v: all(x >= 0 for x in v), "oracle-check pump grid"),
    "oracle_delta_c_list": (_float_list, None, "oracle-check pump detuning grid"),
    "oracle_delta_s_list": (_float_list, None, "oracle-check probe detuning grid"),
}


@dataclass(frozen=True)
class RunConfig:
    t1_s: float = 1.5e-11
    t2_s: float = 3e-13
    omega_c: float = 0.3
    delta_c: float = 0.05
    delta_s: float = 0.0
    sigma_c: tuple = (0.05, 0.15)
    truncation: float = 6.0
    quad_nodes: int = 257
    ensemble_convention: str = "fixed_beat"
    a: float = 1.0
    b: float = 1.0
    c: float = 1.0
    winding_l: int = 1
    lambda_m: float = 530e-9
    delta_l: int = 1
    samples: int = 4096
    spectrum_span: float = 2.0
    spectrum_points: int = 801
    fork_p: int = 1
    fork_period_m: float = 400e-6
    fork_omega_c: float = 1.0
    dark_im_chi: float = 0.4
    grid_n: int = 1024
    grid_pitch_m: float = 40e-6
    aperture_m: float | None = None
    waist_m: float = 1e-3
    distance_m: float | None = None
    l_max: int = 8
    oracle_omega_s: float = 5e-5
    oracle_settle: float | None = None
    oracle_demod_periods: int = 8
    oracle_step: float | None = None
    oracle_omega_c_list: tuple = (0.0, 0.1, 0.3, 1.0)
    oracle_delta_c_list: tuple = (0.0, 0.05, 0.5)
    oracle_delta_s_list: tuple = (-2.0, -1.0, -0.3, 0.0, 0.3, 1.0, 2.0)
    provenance: dict = field(default_factory=dict, compare=False, repr=False)

    def system_params(self, **changes) -> SystemParams:
        values = dict(t1=self.t1_s, t2=self.t2_s, omega_c=self.omega_c, delta_c=self.delta_c)
        values.update(changes)
        return SystemParams(**values)

    def items(self):
        return [(f.name, getattr(self, f.name)) for f in fields(self) if f.name != "provenance"]

    def dump(self) -> str:
        """Resolved configuration as ``key = value  # source`` lines."""
        out = []
        for key, value in self.items():
            if isinstance(value, tuple):
                text = ", ".join(repr(v) for v in value)
            elif value is None:
                text = AUTO
            else:
                text = repr(value) if not isinstance(value, str) else value
            out.append(f"{key} = {text}  # {self.provenance.get(key, 'default')}")
        return "\n".join(out) + "\n"


def parse_value(key, text):
    if key not in KEYS:
        raise ConfigError(key, "unknown configuration key")
    parser, check, _ = KEYS[key]
    try:
        value = parser(text)
    except (TypeError, ValueError) as err:
        raise ConfigError(key, f"cannot parse {text!r}: {err}") from None
    if check is not None and not check(value):
        raise ConfigError(key, f"invalid value {text!r}")
    return value


def _read_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as err:
        raise ConfigError(str(path), f"cannot read configuration: {err}") from err
    values = {}
    for number, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{number}", "expected 'key = value'")
        key, text = (part.strip() for part in line.split("=", 1))
        values[key] = parse_value(key, text)
    return values


def load_config(path=None, overrides=None) -> RunConfig:
    """Defaults, then ``path`` (if given), then ``overrides`` (``{key: text}``)."""
    values, provenance = {}, {}
    if path is not None:
        for key, value in _read_file(path).items():
            values[key] = value
            provenance[key] = "file"
    for key, text in (overrides or {}).items():
        values[key] = parse_value(key, text)
        provenance[key] = "flag"
    for f in fields(RunConfig):
        provenance.setdefault(f.name, "default")
    provenance.pop("provenance", None)
    config = RunConfig(**values, provenance=provenance)
    try:
        config.system_params()
    except CpoError as err:
        raise ConfigError("t1_s/t2_s", str(err)) from err
    try:
        AzimuthalPumpProfile(config.a, config.b, config.c, config.winding_l)
    except CpoError as err:
        raise ConfigError("a/b/c", str(err)) from err
    return config
