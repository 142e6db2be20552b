"""Position-space fields: wavefunctions, densities, probability currents.

A subspace state evaluates as

    Psi(x, y) = sum_K c_K psi_{nx_K}(x; q omega0) psi_{ny_K}(y; p omega0)

with analytic gradients from the Hermite ladder, the density rho = |Psi|^2
and the probability current J = Im(Psi* grad Psi)  (hbar = m = 1).  Being
energy eigenstates, these fields satisfy div J = 0 exactly; states built
from real control parameters are real up to a global phase and carry no
current at all ("static", fully fringed), while complex parameters produce
divergence-free circulation around p x q lattices of phase vortices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specialfn import psi_1d_table
from .states import LissajousState

__all__ = [
    "FieldGrid",
    "WaveField",
    "VortexSet",
    "DivergenceReport",
    "eval_state",
    "quadrature",
    "default_extent",
    "divergence_residual",
    "detect_vortices",
    "interference_decomposition",
    "axis_extrema_count",
]


@dataclass(frozen=True)
class FieldGrid:
    """Uniform rectangular grid, inclusive of both endpoints on each axis."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int

    def __post_init__(self) -> None:
        if self.nx < 16 or self.ny < 16:
            raise ValueError("grid needs at least 16 points per axis")
        if not (self.x_max > self.x_min and self.y_max > self.y_min):
            raise ValueError("grid extent must be nonempty")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def dy(self) -> float:
        return (self.y_max - self.y_min) / (self.ny - 1)

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    @property
    def ys(self) -> np.ndarray:
        return np.linspace(self.y_min, self.y_max, self.ny)

    def meshgrid(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.xs, self.ys, indexing="ij")


@dataclass(frozen=True)
class WaveField:
    """Complex field with analytic gradient and derived observables.

    Arrays are indexed ``[ix, iy]``.  ``rho`` is the nodewise |psi|^2 and
    (jx, jy) the nodewise Im(psi* grad psi); both are computed directly
    from psi and its analytic gradient (no finite differences).
    """

    grid: FieldGrid
    psi: np.ndarray
    gx: np.ndarray
    gy: np.ndarray
    rho: np.ndarray
    jx: np.ndarray
    jy: np.ndarray

    @staticmethod
    def from_psi(
        grid: FieldGrid, psi: np.ndarray, gx: np.ndarray, gy: np.ndarray
    ) -> "WaveField":
        rho = psi.real ** 2 + psi.imag ** 2
        jx = psi.real * gx.imag - psi.imag * gx.real
        jy = psi.real * gy.imag - psi.imag * gy.real
        return WaveField(grid=grid, psi=psi, gx=gx, gy=gy, rho=rho, jx=jx, jy=jy)


def _nyquist_check(omega: float, n_max: int, step: float, axis: str, mode: str) -> None:
    # phi_n oscillates with wavenumber up to sqrt(2 n + 1) in u = sqrt(omega) x,
    # i.e. sqrt(omega (2 n + 1)) in x; demand >= 2 samples per wavelength.
    k_max = math.sqrt(omega * (2 * n_max + 1))
    if step > math.pi / k_max:
        message = (
            f"{axis} step {step:.4g} undersamples the shortest wavelength "
            f"{2 * math.pi / k_max:.4g} (need >= 2 points per wavelength)"
        )
        if mode == "error":
            raise ValueError(message)
        if mode == "warn":
            import warnings

            warnings.warn(message, RuntimeWarning, stacklevel=3)


def eval_state(
    state: LissajousState,
    grid: FieldGrid,
    *,
    nyquist: str = "warn",
    workers: int | None = None,
) -> WaveField:
    """Evaluate Psi, its analytic gradient, rho and J on the grid.

    The sum over K separates into per-axis Hermite tables, so the cost is
    two 1D table builds plus one (N+1)-rank matrix product per output.
    ``workers`` chunks the x axis; chunk results are written into disjoint
    row blocks, so the output is bitwise identical for any worker count.
    """
    if nyquist not in ("warn", "error", "ignore"):
        raise ValueError("nyquist must be 'warn', 'error', or 'ignore'")
    params = state.params
    wx, wy = params.omega_x, params.omega_y
    nx_orders = state.nx.astype(int)
    ny_orders = state.ny.astype(int)
    if nyquist != "ignore":
        _nyquist_check(wx, int(nx_orders.max()), grid.dx, "x", nyquist)
        _nyquist_check(wy, int(ny_orders.max()), grid.dy, "y", nyquist)

    ys = grid.ys
    yv, dyv = psi_1d_table(int(ny_orders.max()), wy, ys)
    Y = yv[ny_orders]
    dY = dyv[ny_orders]

    def rows(xs_block: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        xv, dxv = psi_1d_table(int(nx_orders.max()), wx, xs_block)
        X = xv[nx_orders] * state.coeffs[:, None]
        dX = dxv[nx_orders] * state.coeffs[:, None]
        psi = X.T @ Y
        gx = dX.T @ Y
        gy = X.T @ dY
        return psi, gx, gy

    xs = grid.xs
    if workers is None or workers <= 1 or grid.nx < 2 * 16:
        psi, gx, gy = rows(xs)
    else:
        psi = np.empty((grid.nx, grid.ny), dtype=complex)
        gx = np.empty_like(psi)
        gy = np.empty_like(psi)
        blocks = np.array_split(np.arange(grid.nx), min(workers, grid.nx))
        from concurrent.futures import ThreadPoolExecutor

        def fill(idx: np.ndarray) -> None:
            b_psi, b_gx, b_gy = rows(xs[idx])
            psi[idx] = b_psi
            gx[idx] = b_gx
            gy[idx] = b_gy

        with ThreadPoolExecutor(max_workers=len(blocks)) as pool:
            list(pool.map(fill, blocks))
    return WaveField.from_psi(grid, psi, gx, gy)


def quadrature(values: np.ndarray, grid: FieldGrid) -> float:
    """2D trapezoid rule with a fixed summation order (reproducible bytes)."""
    values = np.asarray(values)
    if values.shape != (grid.nx, grid.ny):
        raise ValueError("values shape does not match grid")
    wx = np.ones(grid.nx)
    wx[0] = wx[-1] = 0.5
    wy = np.ones(grid.ny)
    wy[0] = wy[-1] = 0.5
    return float(wx @ values @ wy) * grid.dx * grid.dy


def _half_width(n_max: int, omega: float, pad: float, scale: float) -> float:
    # Turning point sqrt((2n+1)/omega) stretched for tail mass: the larger of
    # a proportional margin and an additive Gaussian pad (the additive term
    # matters at small n, where 1.5x the turning point is nowhere near enough).
    u_turn = math.sqrt(2 * n_max + 1)
    return max(scale * u_turn, u_turn + pad) / math.sqrt(omega)


def default_extent(
    state: LissajousState,
    points: int = 512,
    *,
    pad: float = 5.0,
    scale: float = 1.5,
) -> FieldGrid:
    """Symmetric grid sized from the largest occupied order on each axis.

    The half-widths cover the classical turning points with enough margin
    that the neglected tail mass is below ~1e-9, so unit normalization is
    recoverable by quadrature.
    """
    hx = _half_width(int(state.nx.max()), state.params.omega_x, pad, scale)
    hy = _half_width(int(state.ny.max()), state.params.omega_y, pad, scale)
    return FieldGrid(-hx, hx, -hy, hy, points, points)


@dataclass(frozen=True)
class DivergenceReport:
    max_abs: float
    normalized: float
    current_scale: float


def divergence_residual(field: WaveField) -> DivergenceReport:
    """Continuity check: second-order central differences of the analytic J.

    Stationary states satisfy div J = 0 exactly, so the interior residual is
    pure discretization error and must shrink as O(h^2) under refinement.
    ``normalized`` divides by the current scale max|J| / min(dx, dy).
    """
    jx, jy = field.jx, field.jy
    dx, dy = field.grid.dx, field.grid.dy
    div = (jx[2:, 1:-1] - jx[:-2, 1:-1]) / (2 * dx) + (
        jy[1:-1, 2:] - jy[1:-1, :-2]
    ) / (2 * dy)
    max_abs = float(np.max(np.abs(div))) if div.size else 0.0
    j_mag = np.hypot(jx, jy)
    j_max = float(j_mag.max())
    scale = j_max / min(dx, dy)
    normalized = max_abs / scale if scale > 0 else 0.0
    return DivergenceReport(max_abs=max_abs, normalized=normalized, current_scale=scale)


@dataclass(frozen=True)
class VortexSet:
    """Phase singularities found by plaquette winding."""

    xs: np.ndarray
    ys: np.ndarray
    windings: np.ndarray

    def __len__(self) -> int:
        return int(self.windings.size)

    @property
    def counts_by_sign(self) -> dict[int, int]:
        return {
            +1: int(np.count_nonzero(self.windings > 0)),
            -1: int(np.count_nonzero(self.windings < 0)),
        }

    @property
    def total_winding(self) -> int:
        return int(self.windings.sum())


def _wrap(angle: np.ndarray) -> np.ndarray:
    return np.mod(angle + np.pi, 2.0 * np.pi) - np.pi


def detect_vortices(field: WaveField, *, density_floor: float = 1e-6) -> VortexSet:
    """Locate phase vortices: plaquettes whose phase winds by +-2 pi.

    The wrapped phase difference is accumulated around each grid plaquette;
    a total of +-2 pi marks a quantized circulation with winding +-1.  Only
    plaquettes whose four corners all carry density above ``density_floor``
    times max rho are trusted (below that, the phase is numerical noise).
    Plaquettes with any edge jump within 1e-9 of +-pi are discarded as
    ambiguous: such jumps occur on nodal lines of effectively real fields,
    where the +-pi wrap choice would manufacture spurious winding.
    """
    phase = np.angle(field.psi)
    rho = field.rho
    floor = density_floor * float(rho.max())
    ok = rho > floor
    corners_ok = ok[:-1, :-1] & ok[1:, :-1] & ok[1:, 1:] & ok[:-1, 1:]
    d1 = _wrap(phase[1:, :-1] - phase[:-1, :-1])
    d2 = _wrap(phase[1:, 1:] - phase[1:, :-1])
    d3 = _wrap(phase[:-1, 1:] - phase[1:, 1:])
    d4 = _wrap(phase[:-1, :-1] - phase[:-1, 1:])
    ambiguous = np.zeros_like(d1, dtype=bool)
    for d in (d1, d2, d3, d4):
        ambiguous |= np.abs(np.abs(d) - np.pi) < 1e-9
    total = d1 + d2 + d3 + d4
    winding = np.rint(total / (2.0 * np.pi)).astype(int)
    hits = corners_ok & ~ambiguous & (winding != 0)
    ix, iy = np.nonzero(hits)
    xs = field.grid.xs
    ys = field.grid.ys
    return VortexSet(
        xs=0.5 * (xs[ix] + xs[ix + 1]),
        ys=0.5 * (ys[iy] + ys[iy + 1]),
        windings=winding[hits],
    )


def interference_decomposition(
    weight: complex,
    term_fields: list[WaveField],
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split |weight sum_j Psi_j|^2 into diagonal and cross contributions.

    Returns ``(rho_total, rho_diag, rho_cross)`` where rho_diag sums the
    individual |Psi_j|^2 and rho_cross accumulates the pairwise interference
    2 Re(Psi_j* Psi_k), each scaled by |weight|^2.  The three arrays satisfy
    rho_total = rho_diag + rho_cross nodewise to rounding; rho_cross is
    computed from the pairwise products, not from that identity.
    """
    if not term_fields:
        raise ValueError("need at least one term field")
    w2 = abs(weight) ** 2
    psis = [f.psi for f in term_fields]
    total_psi = weight * sum(psis)
    rho_total = total_psi.real ** 2 + total_psi.imag ** 2
    rho_diag = w2 * sum(p.real ** 2 + p.imag ** 2 for p in psis)
    rho_cross = np.zeros_like(rho_diag)
    for j in range(len(psis)):
        for k in range(j + 1, len(psis)):
            prod = np.conj(psis[j]) * psis[k]
            rho_cross += 2.0 * w2 * prod.real
    return rho_total, rho_diag, rho_cross


def axis_extrema_count(
    field: WaveField,
    axis: str = "x",
    *,
    density_floor: float = 1e-6,
    positive_half: bool = True,
) -> int:
    """Count strict local maxima of rho along a coordinate axis line.

    The requested axis must pass through grid nodes (a symmetric grid with
    an odd point count does).  By default only the closed positive half-axis
    is scanned, matching how figure panels are read: symmetric +- pairs of
    maxima count once.  Maxima below ``density_floor`` times the global
    maximum are ignored.
    """
    grid = field.grid
    if axis == "x":
        line_coords = grid.ys
        j0 = int(np.argmin(np.abs(line_coords)))
        if abs(line_coords[j0]) > 1e-9 * max(grid.dy, 1.0):
            raise ValueError("grid has no node on y = 0; use an odd point count")
        profile = field.rho[:, j0]
        coords = grid.xs
    elif axis == "y":
        line_coords = grid.xs
        i0 = int(np.argmin(np.abs(line_coords)))
        if abs(line_coords[i0]) > 1e-9 * max(grid.dx, 1.0):
            raise ValueError("grid has no node on x = 0; use an odd point count")
        profile = field.rho[i0, :]
        coords = grid.ys
    else:
        raise ValueError("axis must be 'x' or 'y'")
    if positive_half:
        sel = coords >= -1e-12
        profile = profile[sel]
    floor = density_floor * float(field.rho.max())
    inner = profile[1:-1]
    peaks = (inner > profile[:-2]) & (inner > profile[2:]) & (inner > floor)
    return int(np.count_nonzero(peaks))
