"""Stable evaluation of harmonic-oscillator eigenfunctions and combinatorial weights.

The normalized Hermite functions

    phi_n(u) = H_n(u) exp(-u**2 / 2) / sqrt(2**n n! sqrt(pi))

are generated with the prenormalized three-term recurrence

    phi_0(u)   = pi**(-1/4) exp(-u**2 / 2)
    phi_{k+1}  = sqrt(2 / (k+1)) u phi_k - sqrt(k / (k+1)) phi_{k-1}

which keeps every intermediate bounded (|phi_n| <= pi**(-1/4) ~ 0.7511),
unlike the raw polynomials H_n, whose values overflow double precision
around n ~ 150 for moderate u.  Derivatives come from the ladder identity

    phi_n'(u) = sqrt(2 n) phi_{n-1}(u) - u phi_n(u).

A 1D oscillator eigenstate of frequency omega (hbar = m = 1) is the
rescaled Hermite function

    psi_n(x; omega) = omega**(1/4) phi_n(sqrt(omega) x),

normalized so that integral |psi_n|**2 dx = 1.  (The omega**(1/4) power
is forced by that normalization.)
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln

__all__ = [
    "hermite_function",
    "hermite_table",
    "psi_1d",
    "psi_1d_table",
    "log_weight",
]

#: Global bound on |phi_n(u)| for all n >= 0 and real u.
PHI_SUP = math.pi ** -0.25


def hermite_table(n_max: int, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Values and derivatives of phi_0..phi_{n_max} on a 1D array of points.

    Returns ``(vals, ders)``, each of shape ``(n_max + 1, u.size)``, where
    ``vals[n]`` is phi_n evaluated at ``u`` and ``ders[n]`` its derivative.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    u = np.asarray(u, dtype=float)
    if u.ndim != 1:
        raise ValueError("u must be one-dimensional")
    vals = np.empty((n_max + 1, u.size))
    vals[0] = PHI_SUP * np.exp(-0.5 * u * u)
    if n_max >= 1:
        vals[1] = math.sqrt(2.0) * u * vals[0]
    for k in range(1, n_max):
        c1 = math.sqrt(2.0 / (k + 1.0))
        c2 = math.sqrt(k / (k + 1.0))
        vals[k + 1] = c1 * u * vals[k] - c2 * vals[k - 1]
    ders = np.empty_like(vals)
    ders[0] = -u * vals[0]
    for n in range(1, n_max + 1):
        ders[n] = math.sqrt(2.0 * n) * vals[n - 1] - u * vals[n]
    return vals, ders


def hermite_function(n: int, u: float) -> tuple[float, float]:
    """Value and derivative of the normalized Hermite function phi_n at a point."""
    vals, ders = hermite_table(n, np.array([float(u)]))
    return float(vals[n, 0]), float(ders[n, 0])


def psi_1d(n: int, omega: float, x: float) -> float:
    """Normalized 1D oscillator eigenfunction psi_n(x) for frequency omega."""
    if omega <= 0.0:
        raise ValueError("omega must be positive")
    root = math.sqrt(omega)
    value, _ = hermite_function(n, root * x)
    return omega ** 0.25 * value


def psi_1d_table(
    n_max: int, omega: float, x: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Tables of psi_0..psi_{n_max} and d/dx psi_n on the points ``x``.

    The derivative picks up the chain-rule factor sqrt(omega) on top of the
    amplitude scaling omega**(1/4).
    """
    if omega <= 0.0:
        raise ValueError("omega must be positive")
    root = math.sqrt(omega)
    vals, ders = hermite_table(n_max, root * np.asarray(x, dtype=float))
    return omega ** 0.25 * vals, omega ** 0.75 * ders


def log_weight(N: int, K: int, p: int, q: int) -> float:
    """log of the degeneracy weight (q N)! / ((p K)! (q (N - K))!).

    Computed with log-gamma so that weights at large arguments (for example
    (q N)! with q N > 100, far beyond double-precision factorials' comfort
    zone once combined in ratios) never overflow.  For p = q = 1 this is
    log of the binomial coefficient C(N, K).
    """
    if not 0 <= K <= N:
        raise ValueError("K must satisfy 0 <= K <= N")
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive integers")
    return float(
        gammaln(q * N + 1) - gammaln(p * K + 1) - gammaln(q * (N - K) + 1)
    )
