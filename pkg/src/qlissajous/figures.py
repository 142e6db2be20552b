"""Matplotlib renderings written next to the delimited outputs.

Every CLI report path saves a PNG alongside its CSV/PPM files: density
heatmaps with optional classical-curve overlay and current quivers, plain
curve plots, and centroid-versus-classical trajectory comparisons.  The Agg
backend is forced so rendering works headless, and savefig metadata is
pinned so repeated runs produce identical bytes.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .classical import ClassicalCurve, curve_points
from .fields import WaveField, VortexSet

__all__ = [
    "render_field_figure",
    "render_classical_figure",
    "render_trajectory_figure",
]

_SAVE_KW = {"dpi": 140, "metadata": {"Software": "qlissajous"}}


def _save(fig, path: Path | str) -> Path:
    path = Path(path)
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
    return path


def render_field_figure(
    field: WaveField,
    path: Path | str,
    *,
    overlay: ClassicalCurve | None = None,
    vortices: VortexSet | None = None,
    title: str | None = None,
) -> Path:
    """Density heatmap plus current map, with optional overlays."""
    grid = field.grid
    extent = (grid.x_min, grid.x_max, grid.y_min, grid.y_max)
    j_mag = np.hypot(field.jx, field.jy)
    has_current = float(j_mag.max()) > 1e-12 * float(field.rho.max())
    ncols = 2 if has_current else 1
    fig, axes = plt.subplots(1, ncols, figsize=(5.2 * ncols, 4.6), squeeze=False)
    ax = axes[0, 0]
    ax.imshow(
        field.rho.T,
        origin="lower",
        extent=extent,
        cmap="viridis",
        aspect="equal",
    )
    if overlay is not None:
        ts = np.linspace(0.0, overlay.period, 2000)
        cx, cy = curve_points(overlay, ts)
        ax.plot(cx, cy, color="white", lw=0.8, alpha=0.7)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title("density")
    if has_current:
        ax2 = axes[0, 1]
        ax2.imshow(
            j_mag.T, origin="lower", extent=extent, cmap="magma", aspect="equal"
        )
        step = max(1, grid.nx // 24)
        X, Y = grid.meshgrid()
        sl = (slice(None, None, step), slice(None, None, step))
        ax2.quiver(
            X[sl],
            Y[sl],
            field.jx[sl],
            field.jy[sl],
            color="cyan",
            width=0.003,
            alpha=0.8,
        )
        if vortices is not None and len(vortices):
            up = vortices.windings > 0
            ax2.plot(vortices.xs[up], vortices.ys[up], "w+", ms=8)
            ax2.plot(vortices.xs[~up], vortices.ys[~up], "wx", ms=6)
        ax2.set_xlabel("x")
        ax2.set_title("current")
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    return _save(fig, path)


def render_classical_figure(
    curve: ClassicalCurve, path: Path | str, *, periods: float = 1.0
) -> Path:
    ts = np.linspace(0.0, periods * curve.period, 4000)
    x, y = curve_points(curve, ts)
    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    ax.plot(x, y, lw=0.9)
    ax.set_aspect("equal")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(f"{curve.q:g}:{curve.p:g} curve, phi={curve.phi:.4g}")
    fig.tight_layout()
    return _save(fig, path)


def render_trajectory_figure(
    times: np.ndarray,
    quantum_xy: np.ndarray,
    classical_xy: np.ndarray,
    path: Path | str,
) -> Path:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10.0, 4.4))
    ax1.plot(classical_xy[:, 0], classical_xy[:, 1], "-", lw=0.9, label="classical")
    ax1.plot(quantum_xy[:, 0], quantum_xy[:, 1], "o", ms=3, label="centroid")
    ax1.set_aspect("equal")
    ax1.set_xlabel("x")
    ax1.set_ylabel("y")
    ax1.legend()
    dev = np.hypot(*(quantum_xy - classical_xy).T)
    ax2.semilogy(times, np.maximum(dev, 1e-17))
    ax2.set_xlabel("t")
    ax2.set_ylabel("|<r>| deviation")
    fig.tight_layout()
    return _save(fig, path)
