"""Byte-reproducible CSV and PGM writers."""
from __future__ import annotations

import hashlib
import math
import os
from numbers import Integral

import numpy as np

from .errors import OutputError, ParameterError

__all__ = [
    "format_number",
    "write_table_csv",
    "write_raster_pgm",
    "write_text",
    "sha256_file",
    "write_manifest",
]


def format_number(value) -> str:
    """12 significant digits, ``.`` decimal separator; integers verbatim."""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (Integral, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    value = float(value)
    if value == 0.0:
        value = 0.0  # drop the sign of negative zero
    return f"{value:.12g}"


def _write_bytes(path, payload: bytes):
    try:
        with open(path, "wb") as fh:
            fh.write(payload)
    except OSError as err:
        raise OutputError(f"cannot write {path}: {err}") from err


def write_text(text: str, path):
    _write_bytes(path, text.encode("utf-8"))


def write_table_csv(header, rows, path):
    """Header line plus one comma-separated line per row, ``\\n`` endings."""
    header = list(header)
    if not header or any(not str(h) for h in header):
        raise ParameterError("CSV column names must be non-empty")
    lines = [",".join(str(h) for h in header)]
    for row in rows:
        row = list(row)
        if len(row) != len(header):
            raise ParameterError(f"row has {len(row)} fields, header has {len(header)}")
        lines.append(",".join(format_number(v) for v in row))
    _write_bytes(path, ("\n".join(lines) + "\n").encode("ascii"))


def write_raster_pgm(raster, path, mapping="linear"):
    """Binary 8-bit PGM with the mapped value range recorded in a comment.

    ``mapping`` is ``"linear"`` (data min/max to 0..255), ``"binary"``
    ({0, 1} to {0, 255}) or an explicit ``(lo, hi)`` range; values outside an
    explicit range are clipped. A constant raster under ``"linear"`` maps to
    all zeros and is marked ``flat-field``.
    """
    values = np.asarray(getattr(raster, "values", raster), dtype=float)
    if values.ndim != 2:
        raise ParameterError("raster must be two-dimensional")
    if not np.all(np.isfinite(values)):
        raise ParameterError("raster contains non-finite values")
    height, width = values.shape
    note = ""
    if mapping == "binary":
        if not np.all((values == 0) | (values == 1)):
            raise ParameterError("binary raster must contain only 0 and 1")
        lo, hi = 0.0, 1.0
        payload = (values * 255).astype(np.uint8)
    else:
        if mapping == "linear":
            lo, hi = float(values.min()), float(values.max())
        else:
            lo, hi = (float(v) for v in mapping)
            if not hi > lo:
                raise ParameterError("explicit PGM range must have hi > lo")
        if hi == lo:
            payload = np.zeros(values.shape, dtype=np.uint8)
            note = " flat-field"
        else:
            scaled = (np.clip(values, lo, hi) - lo) * (255.0 / (hi - lo))
            payload = np.rint(scaled).astype(np.uint8)
    header = (
        f"P5\n# min={format_number(lo)} max={format_number(hi)}{note}\n{width} {height}\n255\n"
    )
    _write_bytes(path, header.encode("ascii") + np.ascontiguousarray(payload).tobytes())


def sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def write_manifest(directory, names, manifest_name="MANIFEST.sha256"):
    """``<sha256>  <name>`` for every file, sorted by name."""
    lines = [f"{sha256_file(os.path.join(directory, n))}  {n}" for n in sorted(names)]
    path = os.path.join(directory, manifest_name)
    _write_bytes(path, ("\n".join(lines) + "\n").encode("ascii"))
    return path


def wrap_phase(phase):
    """Phase folded into ``[0, 2 pi)``."""
    return np.mod(phase, 2.0 * math.pi)
