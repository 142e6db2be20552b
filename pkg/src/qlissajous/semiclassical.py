"""Time-dependent two-mode coherent states and their Ehrenfest trajectories.

The unprojected coherent state factorizes into 1D coherent wavepackets,

    Psi(x, y, t) = f(x; alpha e^{-i w_x t}, w_x) f(y; beta e^{-i w_y t}, w_y),

each given by the everywhere-convergent eigenfunction series

    f(x; a, w) = e^{-|a|^2 / 2} sum_n a^n / sqrt(n!) psi_n(x; w).

Summing the series with the Hermite generating function
sum_n H_n(u) s^n / n! = exp(2 u s - s^2) collapses it to the Gaussian

    f(x; a, w) = (w / pi)**(1/4) exp(-|a|^2/2 - a^2/2 - w x^2/2 + sqrt(2 w) a x),

whose derivative is analytic: f' = (sqrt(2 w) a - w x) f.  Note the two
constants this derivation forces: the prefactor carries the **quarter**
power (w_x w_y)**(1/4) / sqrt(pi) for the 2D product (squared modulus must
integrate to one), and the time-dependent amplitudes enter the exponent as
-a^2 / 2, i.e. with an explicit factor 1/2 on alpha^2 e^{-2 i w_x t} and
beta^2 e^{-2 i w_y t}.  Renderings of this wavefunction that show a
sqrt(w_x w_y) / pi prefactor or drop the 1/2 on those squared-amplitude
terms do not normalize and disagree with the series; the truncated series
is therefore kept as the ground truth and the closed form is used as a fast
path only because it matches the series to near machine precision (see
``closed_form_notes``).

The packet centroid obeys the classical equations exactly (Ehrenfest):

    <x>(t) = sqrt(2) |alpha| cos(w_x t) / sqrt(w_x)
    <y>(t) = sqrt(2) |beta| cos(w_y t - phi) / sqrt(w_y)

which is the Lissajous curve with A = sqrt(2)|alpha|/sqrt(w_x),
B = sqrt(2)|beta|/sqrt(w_y).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .classical import ClassicalCurve
from .fields import FieldGrid, WaveField, quadrature
from .specialfn import psi_1d_table
from .states import AmplitudePair, OscillatorParams

__all__ = [
    "SemiclassicalConfig",
    "eval_semiclassical",
    "semiclassical_extent",
    "classical_counterpart",
    "centroid",
    "ehrenfest_report",
    "closed_form_notes",
]


@dataclass(frozen=True)
class SemiclassicalConfig:
    amp: AmplitudePair
    params: OscillatorParams


def classical_counterpart(cfg: SemiclassicalConfig) -> ClassicalCurve:
    """Lissajous curve traced by the packet centroid."""
    wx, wy = cfg.params.omega_x, cfg.params.omega_y
    return ClassicalCurve(
        A=math.sqrt(2.0) * cfg.amp.alpha / math.sqrt(wx),
        B=math.sqrt(2.0) * cfg.amp.beta_abs / math.sqrt(wy),
        q=cfg.params.q,
        p=cfg.params.p,
        phi=cfg.amp.phi,
        omega0=cfg.params.omega0,
    )


def _coherent_1d_closed(
    x: np.ndarray, a: complex, omega: float
) -> tuple[np.ndarray, np.ndarray]:
    pref = (omega / math.pi) ** 0.25
    const = -0.5 * abs(a) ** 2 - 0.5 * a * a
    f = pref * np.exp(const - 0.5 * omega * x * x + math.sqrt(2.0 * omega) * a * x)
    df = (math.sqrt(2.0 * omega) * a - omega * x) * f
    return f, df


def _series_cutoff(a_abs: float) -> int:
    # Poisson amplitude tail: past |a|^2 + 12|a| + 30 the summed remainder
    # is below 1e-15 relative even against the smallest on-grid values.
    return int(math.ceil(a_abs * a_abs + 12.0 * a_abs + 30.0))


def _coherent_1d_series(
    x: np.ndarray, a: complex, omega: float
) -> tuple[np.ndarray, np.ndarray]:
    n_max = _series_cutoff(abs(a))
    vals, ders = psi_1d_table(n_max, omega, x)
    n = np.arange(n_max + 1)
    from scipy.special import gammaln

    if a == 0:
        coef = np.where(n == 0, 1.0, 0.0).astype(complex)
    else:
        log_mag = n * math.log(abs(a)) - 0.5 * gammaln(n + 1) - 0.5 * abs(a) ** 2
        coef = np.exp(log_mag) * np.exp(1j * cmath.phase(a) * n)
    return coef @ vals, coef @ ders


def eval_semiclassical(
    cfg: SemiclassicalConfig,
    t: float,
    grid: FieldGrid,
    *,
    method: str = "closed",
) -> WaveField:
    """Evaluate the time-evolved packet on a grid.

    ``method='series'`` sums truncated eigenfunction series (the ground
    truth); ``method='closed'`` uses the re-derived Gaussian (fast path,
    validated against the series).  The overall phase e^{-i E0 t} of the
    zero-point energy is omitted; it cancels in every observable here.
    """
    wx, wy = cfg.params.omega_x, cfg.params.omega_y
    a_t = cfg.amp.alpha * cmath.exp(-1j * wx * t)
    b_t = cfg.amp.beta * cmath.exp(-1j * wy * t)
    if method == "closed":
        eval_1d = _coherent_1d_closed
    elif method == "series":
        eval_1d = _coherent_1d_series
    else:
        raise ValueError("method must be 'closed' or 'series'")
    f, df = eval_1d(grid.xs, a_t, wx)
    g, dg = eval_1d(grid.ys, b_t, wy)
    psi = np.outer(f, g)
    gx = np.outer(df, g)
    gy = np.outer(f, dg)
    return WaveField.from_psi(grid, psi, gx, gy)


def semiclassical_extent(
    cfg: SemiclassicalConfig, points: int = 512, *, pad: float = 6.5
) -> FieldGrid:
    """Grid covering the full classical sweep plus a Gaussian-width margin."""
    wx, wy = cfg.params.omega_x, cfg.params.omega_y
    hx = math.sqrt(2.0) * cfg.amp.alpha / math.sqrt(wx) + pad / math.sqrt(wx)
    hy = math.sqrt(2.0) * cfg.amp.beta_abs / math.sqrt(wy) + pad / math.sqrt(wy)
    return FieldGrid(-hx, hx, -hy, hy, points, points)


def centroid(field: WaveField) -> tuple[float, float]:
    """Position expectation value by quadrature of x rho and y rho."""
    X, Y = field.grid.meshgrid()
    return (
        quadrature(X * field.rho, field.grid),
        quadrature(Y * field.rho, field.grid),
    )


@dataclass(frozen=True)
class EhrenfestReport:
    times: np.ndarray
    quantum_xy: np.ndarray
    classical_xy: np.ndarray
    max_deviation: float


def ehrenfest_report(
    cfg: SemiclassicalConfig,
    n_times: int = 32,
    *,
    grid: FieldGrid | None = None,
    method: str = "closed",
) -> EhrenfestReport:
    """Compare the packet centroid with the classical curve over one period."""
    if grid is None:
        grid = semiclassical_extent(cfg)
    curve = classical_counterpart(cfg)
    times = np.linspace(0.0, curve.period, n_times, endpoint=False)
    quantum = np.empty((n_times, 2))
    classical = np.empty((n_times, 2))
    for i, t in enumerate(times):
        field = eval_semiclassical(cfg, float(t), grid, method=method)
        quantum[i] = centroid(field)
        classical[i] = (
            curve.A * math.cos(curve.q * curve.omega0 * t),
            curve.B * math.cos(curve.p * curve.omega0 * t - curve.phi),
        )
    dev = float(np.max(np.hypot(*(quantum - classical).T)))
    return EhrenfestReport(
        times=times,
        quantum_xy=quantum,
        classical_xy=classical,
        max_deviation=dev,
    )


def closed_form_notes() -> str:
    """Report the constants the generating-function derivation fixes."""
    return (
        "closed-form coherent packet: prefactor (w_x w_y)^(1/4) / sqrt(pi) "
        "(quarter powers, so |Psi|^2 integrates to 1) and squared-amplitude "
        "terms entering as -alpha(t)^2/2 - beta(t)^2/2 (explicit factor 1/2); "
        "variants with sqrt(w_x w_y)/pi or without the 1/2 fail both "
        "normalization and the series cross-check."
    )
