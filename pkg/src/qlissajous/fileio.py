"""Deterministic on-disk formats: field tables, PPM rasters, run manifests.

Field dumps come in two modes sharing one JSON sidecar (written next to the
data file as ``<name>.json``):

* text: CSV with header ``x,y,re_psi,im_psi,rho,jx,jy``, rows in row-major
  order (x outer loop), every float printed with shortest round-trip
  precision so values reload exactly;
* binary: raw IEEE-754 little-endian float64, the same five field columns
  concatenated array by array in C order (x and y are implicit in the grid).

The sidecar records the grid, shape, format and a SHA-256 of the data file;
reads verify the checksum before parsing.  Rasters are binary PPM (P6) with
a fixed, documented colormap so identical inputs give identical bytes.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .fields import FieldGrid, WaveField

__all__ = [
    "FieldIOError",
    "FieldFormatError",
    "FieldDimensionError",
    "FieldChecksumError",
    "write_field",
    "read_field",
    "write_raster",
    "write_manifest",
    "sha256_file",
]

_CSV_HEADER = "x,y,re_psi,im_psi,rho,jx,jy"
_COLUMNS = ("re_psi", "im_psi", "rho", "jx", "jy")


class FieldIOError(Exception):
    """Base class for field serialization failures."""


class FieldFormatError(FieldIOError):
    """File contents do not match the declared format."""


class FieldDimensionError(FieldIOError):
    """Payload size disagrees with the sidecar grid shape."""


class FieldChecksumError(FieldIOError):
    """Data file bytes do not match the sidecar checksum."""


def sha256_file(path: Path | str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _sidecar_path(path: Path) -> Path:
    return path.with_name(path.name + ".json")


def _grid_dict(grid: FieldGrid) -> dict:
    return asdict(grid)


def _columns(field: WaveField) -> dict[str, np.ndarray]:
    return {
        "re_psi": field.psi.real,
        "im_psi": field.psi.imag,
        "rho": field.rho,
        "jx": field.jx,
        "jy": field.jy,
    }


def write_field(
    path: Path | str,
    field: WaveField,
    *,
    fmt: str = "csv",
    provenance: str | None = None,
) -> Path:
    """Write the field and its sidecar; returns the sidecar path."""
    if fmt not in ("csv", "bin"):
        raise ValueError("fmt must be 'csv' or 'bin'")
    path = Path(path)
    cols = _columns(field)
    if fmt == "csv":
        # tolist() hands back Python floats, whose repr is the shortest
        # string that round-trips the exact double.
        xs, ys = field.grid.xs.tolist(), field.grid.ys.tolist()
        data = [cols[name].tolist() for name in _COLUMNS]
        lines = [_CSV_HEADER]
        for i in range(field.grid.nx):
            rows_i = [col[i] for col in data]
            for j in range(field.grid.ny):
                lines.append(
                    f"{xs[i]!r},{ys[j]!r},"
                    + ",".join(repr(col_i[j]) for col_i in rows_i)
                )
        path.write_text("\n".join(lines) + "\n")
    else:
        payload = b"".join(
            np.ascontiguousarray(cols[name], dtype="<f8").tobytes() for name in _COLUMNS
        )
        path.write_bytes(payload)
    sidecar = {
        "format": fmt,
        "grid": _grid_dict(field.grid),
        "columns": list(_COLUMNS),
        "sha256": sha256_file(path),
    }
    if provenance is not None:
        sidecar["provenance"] = provenance
    sidecar_path = _sidecar_path(path)
    sidecar_path.write_text(json.dumps(sidecar, indent=2, sort_keys=True) + "\n")
    return sidecar_path


def read_field(path: Path | str) -> WaveField:
    """Reload a field dump; checksum, format and dimensions are all verified."""
    path = Path(path)
    sidecar_path = _sidecar_path(path)
    if not sidecar_path.exists():
        raise FieldFormatError(f"missing sidecar {sidecar_path}")
    meta = json.loads(sidecar_path.read_text())
    try:
        fmt = meta["format"]
        grid = FieldGrid(**meta["grid"])
        recorded = meta["sha256"]
    except (KeyError, TypeError) as exc:
        raise FieldFormatError(f"malformed sidecar {sidecar_path}: {exc}") from exc
    actual = sha256_file(path)
    if actual != recorded:
        raise FieldChecksumError(
            f"{path}: sha256 {actual} does not match sidecar {recorded}"
        )
    n_nodes = grid.nx * grid.ny
    if fmt == "csv":
        text = path.read_text()
        lines = text.strip().split("\n")
        if not lines or lines[0].strip() != _CSV_HEADER:
            raise FieldFormatError(
                f"{path}: expected header '{_CSV_HEADER}', got '{lines[0][:60] if lines else ''}'"
            )
        if len(lines) - 1 != n_nodes:
            raise FieldDimensionError(
                f"{path}: {len(lines) - 1} rows for a {grid.nx}x{grid.ny} grid"
            )
        try:
            data = np.array(
                [[float(v) for v in line.split(",")] for line in lines[1:]]
            )
        except ValueError as exc:
            raise FieldFormatError(f"{path}: non-numeric row: {exc}") from exc
        if data.shape[1] != 7:
            raise FieldFormatError(f"{path}: expected 7 columns, got {data.shape[1]}")
        arrays = {
            name: data[:, 2 + k].reshape(grid.nx, grid.ny)
            for k, name in enumerate(_COLUMNS)
        }
    elif fmt == "bin":
        raw = path.read_bytes()
        expected = len(_COLUMNS) * n_nodes * 8
        if len(raw) != expected:
            raise FieldDimensionError(
                f"{path}: {len(raw)} bytes, expected {expected} for {grid.nx}x{grid.ny}"
            )
        flat = np.frombuffer(raw, dtype="<f8")
        arrays = {
            name: flat[k * n_nodes : (k + 1) * n_nodes]
            .reshape(grid.nx, grid.ny)
            .copy()
            for k, name in enumerate(_COLUMNS)
        }
    else:
        raise FieldFormatError(f"{path}: unknown format '{fmt}'")
    psi = arrays["re_psi"] + 1j * arrays["im_psi"]
    # Gradients are not serialized; reconstruct currents-compatible dummies.
    zeros = np.zeros_like(psi)
    return WaveField(
        grid=grid,
        psi=psi,
        gx=zeros,
        gy=zeros,
        rho=arrays["rho"],
        jx=arrays["jx"],
        jy=arrays["jy"],
    )


# Fixed nine-anchor colormap (dark blue -> teal -> yellow), linearly
# interpolated to 256 entries.  Chosen once; never derived from any plotting
# library so raster bytes cannot drift with dependencies.
_ANCHORS = np.array(
    [
        (13, 8, 70),
        (32, 37, 117),
        (34, 83, 142),
        (31, 124, 142),
        (38, 162, 133),
        (81, 197, 105),
        (155, 217, 60),
        (220, 227, 30),
        (253, 231, 37),
    ],
    dtype=float,
)


def _colormap_table() -> np.ndarray:
    stops = np.linspace(0.0, 1.0, len(_ANCHORS))
    levels = np.linspace(0.0, 1.0, 256)
    table = np.empty((256, 3), dtype=np.uint8)
    for c in range(3):
        table[:, c] = np.rint(np.interp(levels, stops, _ANCHORS[:, c])).astype(np.uint8)
    return table


_TABLE = _colormap_table()
_GRAY = np.stack([np.arange(256)] * 3, axis=1).astype(np.uint8)


def write_raster(
    path: Path | str,
    values: np.ndarray,
    *,
    colormap: str = "default",
) -> Path:
    """Write a min-max normalized scalar field as binary PPM (P6).

    The first array axis (x) runs across raster columns, the second (y) up
    the rows, so the image is oriented like a conventional x-y plot.  A
    constant field maps to the low end of the table.  ``colormap`` is
    ``'default'`` (blue-teal-yellow) or ``'gray'``.
    """
    values = np.asarray(values, dtype=float)
    if values.ndim != 2:
        raise ValueError("raster expects a 2D array")
    if not np.all(np.isfinite(values)):
        raise ValueError("raster values must be finite")
    table = {"default": _TABLE, "gray": _GRAY}.get(colormap)
    if table is None:
        raise ValueError("colormap must be 'default' or 'gray'")
    lo, hi = float(values.min()), float(values.max())
    if hi > lo:
        norm = (values - lo) / (hi - lo)
    else:
        norm = np.zeros_like(values)
    idx = np.clip(np.rint(norm * 255.0), 0, 255).astype(np.uint8)
    # transpose + flip: y increases upward in the plot, downward in PPM rows
    image = table[idx.T[::-1]]
    path = Path(path)
    height, width = image.shape[:2]
    with open(path, "wb") as fh:
        fh.write(f"P6\n{width} {height}\n255\n".encode("ascii"))
        fh.write(image.tobytes())
    return path


def write_manifest(
    out_dir: Path | str,
    *,
    command: str,
    parameters: dict,
    outputs: list[Path | str],
    extra: dict | None = None,
) -> Path:
    """Record what a run produced: parameters plus per-file SHA-256 sums.

    Re-running the same command in a fresh directory must reproduce every
    checksum; the manifest is the determinism contract.
    """
    from . import __version__

    out_dir = Path(out_dir)
    entries = []
    for out in outputs:
        out = Path(out)
        entries.append(
            {
                "path": out.name,
                "bytes": out.stat().st_size,
                "sha256": sha256_file(out),
            }
        )
    manifest = {
        "command": command,
        "parameters": parameters,
        "tool_version": __version__,
        "outputs": entries,
    }
    if extra:
        manifest.update(extra)
    path = out_dir / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path
