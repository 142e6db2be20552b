"""Classical Lissajous curves: sampling, closure analysis, axis-contact counts.

A two-frequency trajectory

    x(t) = A cos(q omega0 t)
    y(t) = B cos(p omega0 t - phi)

closes onto itself iff q/p is rational.  The x motion runs at q omega0 and
the y motion at p omega0, so over one full period the trajectory touches
the bounding edge x = +A exactly q times and the edge y = +B exactly p
times (touches are counted per parameter value: when the curve retraces
itself, a geometrically repeated contact still counts once per pass).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "ClassicalCurve",
    "ClosureReport",
    "curve_points",
    "curve_point",
    "ellipse_residual",
    "closure_analysis",
    "axis_extrema_count",
]

#: Largest denominator considered when deciding whether q/p is rational.
_MAX_DENOMINATOR = 1000


@dataclass(frozen=True)
class ClassicalCurve:
    """Parameters of x = A cos(q w0 t), y = B cos(p w0 t - phi).

    ``q`` and ``p`` may be any positive reals; integer values give closed
    figures, irrational ratios give open (dense) ones.
    """

    A: float
    B: float
    q: float
    p: float
    phi: float = 0.0
    omega0: float = 1.0

    def __post_init__(self) -> None:
        if self.A < 0 or self.B < 0:
            raise ValueError("amplitudes must be nonnegative")
        if self.q <= 0 or self.p <= 0:
            raise ValueError("frequency multipliers must be positive")
        if self.omega0 <= 0:
            raise ValueError("omega0 must be positive")

    @property
    def period(self) -> float:
        """Full period 2 pi / omega0 (closed curves only need this long)."""
        return 2.0 * math.pi / self.omega0


def curve_points(curve: ClassicalCurve, ts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sample the trajectory at parameter values ``ts``."""
    ts = np.asarray(ts, dtype=float)
    x = curve.A * np.cos(curve.q * curve.omega0 * ts)
    y = curve.B * np.cos(curve.p * curve.omega0 * ts - curve.phi)
    return x, y


def curve_point(curve: ClassicalCurve, t: float) -> tuple[float, float]:
    x, y = curve_points(curve, np.array([float(t)]))
    return float(x[0]), float(y[0])


def ellipse_residual(
    x: np.ndarray, y: np.ndarray, A: float, B: float, phi: float
) -> np.ndarray:
    """Implicit-equation residual of the 1:1 ellipse at the given points.

    Eliminating the parameter from x = A cos(tau), y = B cos(tau - phi)
    leaves

        B**2 x**2 - 2 A B x y cos(phi) + A**2 y**2 - A**2 B**2 sin(phi)**2

    which vanishes identically on the trajectory: phi = 0 degenerates to
    the diagonal line, phi = pi/2 gives the axis-aligned ellipse.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return (
        B * B * x * x
        - 2.0 * A * B * math.cos(phi) * x * y
        + A * A * y * y
        - A * A * B * B * math.sin(phi) ** 2
    )


@dataclass(frozen=True)
class ClosureReport:
    commensurate: bool
    q0: int | None = None
    p0: int | None = None
    m: int | None = None
    phase_period: float | None = None


def closure_analysis(q: float, p: float, tol: float = 1e-9) -> ClosureReport:
    """Decide whether the frequency ratio q/p is rational (curve closes).

    The ratio is matched against the best fraction with denominator at most
    1000 (continued-fraction convergents via ``Fraction.limit_denominator``);
    the curve is reported closed when |q/p - q0/p0| <= tol.  For integer
    inputs the common factor m with (q, p) = m (q0, p0) is reported as well,
    and the phase period (the phi range that sweeps every distinct figure
    once) is 2 pi / q.
    """
    if q <= 0 or p <= 0:
        raise ValueError("frequency multipliers must be positive")
    ratio = q / p
    best = Fraction(ratio).limit_denominator(_MAX_DENOMINATOR)
    if abs(ratio - float(best)) > tol:
        return ClosureReport(commensurate=False)
    q0, p0 = best.numerator, best.denominator
    m: int | None = None
    if (
        abs(q - round(q)) <= tol * max(1.0, abs(q))
        and abs(p - round(p)) <= tol * max(1.0, abs(p))
    ):
        m = math.gcd(int(round(q)), int(round(p)))
    return ClosureReport(
        commensurate=True,
        q0=q0,
        p0=p0,
        m=m,
        phase_period=2.0 * math.pi / q,
    )


def axis_extrema_count(
    curve: ClassicalCurve, samples: int | None = None
) -> tuple[int, int]:
    """Count bounding-edge contacts per period: (x-edge touches, y-edge touches).

    Counts the parameter values in one full period at which the trajectory
    touches x = +A (respectively y = +B).  Each pass counts separately, so a
    figure that retraces itself through the same extreme point counts that
    point once per pass ("counted as two" in the retraced phase cases).  For
    integer p and q the counts are exactly (q, p).

    Contacts are located as local maxima of the sampled coordinate lying
    within an amplitude tolerance of the edge, then merged when closer in
    parameter than 2 pi / (1024 p q omega0).
    """
    q_int, p_int = round(curve.q), round(curve.p)
    if abs(curve.q - q_int) > 1e-12 or abs(curve.p - p_int) > 1e-12:
        raise ValueError("axis contact counting requires integer p and q")
    if samples is None:
        samples = max(4096, 64 * q_int * p_int)
    ts = np.linspace(0.0, curve.period, samples, endpoint=False)
    x, y = curve_points(curve, ts)
    merge_window = curve.period / (1024.0 * q_int * p_int)

    def count_edge(values: np.ndarray, amplitude: float) -> int:
        if amplitude == 0.0:
            return 0
        prev = np.roll(values, 1)
        nxt = np.roll(values, -1)
        # Strict-left / loose-right keeps a flat sampled peak from double
        # counting while still catching every analytic contact.
        peaks = (values > prev) & (values >= nxt)
        peaks &= values >= amplitude * (1.0 - 1e-9)
        t_hits = ts[peaks]
        if t_hits.size == 0:
            return 0
        t_sorted = np.sort(t_hits)
        gaps = np.diff(t_sorted)
        distinct = 1 + int(np.count_nonzero(gaps > merge_window))
        # The parameter interval wraps; merge a hit at the end of the period
        # with one at the start.
        if t_sorted.size > 1 and (curve.period - t_sorted[-1] + t_sorted[0]) <= merge_window:
            distinct -= 1
        return distinct

    return count_edge(x, curve.A), count_edge(y, curve.B)
