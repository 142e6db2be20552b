"""Stationary states of the 2D oscillator localized along Lissajous curves.

For commensurate frequencies omega_x = q omega0, omega_y = p omega0 the
energy level with q n_x + p n_y = N p q is (N + 1)-fold degenerate, spanned
by the kets |p K, q (N - K)> for K = 0..N.  Projecting a two-mode coherent
state |alpha, beta> onto that subspace and renormalizing gives a stationary
state whose density rides the classical Lissajous figure:

    c_K  proportional to  w_K**(1/2) xi**K,
    w_K = (q N)! / ((p K)! (q (N - K))!),
    xi  = alpha**p / beta**q.

With the phase convention alpha real >= 0 and beta = |beta| e^{i phi} the
control parameter is xi = |alpha|**p / |beta|**q * e^{-i q phi}; for
p = q = 1 the weights reduce to binomials and the state is the SU(2)
coherent state with stereographic parameter zeta = alpha / beta.

All coefficient construction runs in log space (log-gamma weights, max-shift
before exponentiation), so factorials like (q N)! at q N > 100 never meet a
double-precision overflow.

A (p, q) = (m p0, m q0) state with gcd(p0, q0) = 1 is an m-term coherent
superposition of fundamental (p0, q0) states at base frequency m omega0:

    |xi_pq, N, p, q>  =  W sum_{n=0}^{m-1} ||xi_0| e^{-i (2 pi n + q0 m phi)/m}, m N, p0, q0>

with xi_pq = xi_0**m and the real weight

    W = (1/m) * NORM(N, p, q, |xi_pq|) / NORM(m N, p0, q0, |xi_0|),

generalizing two-component (m = 2) and four-component (m = 4) cat-like
superpositions of SU(2) coherent states.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln, logsumexp

from .specialfn import log_weight

__all__ = [
    "OscillatorParams",
    "AmplitudePair",
    "LissajousState",
    "AngularMomentumState",
    "build_isotropic",
    "build_anisotropic",
    "higher_harmonic_decomposition",
    "project_coherent_oracle",
    "su2_from_bloch",
    "state_energy",
    "fock_to_angular",
    "angular_to_fock",
]


@dataclass(frozen=True)
class OscillatorParams:
    """Frequency multipliers (omega_x, omega_y) = (q, p) * omega0.

    The reduced pair (p0, q0) with gcd 1 and the common factor m satisfy
    p = m p0, q = m q0; m > 1 marks a higher harmonic of the p0:q0 figure.
    """

    p: int
    q: int
    omega0: float = 1.0
    p0: int = field(init=False)
    q0: int = field(init=False)
    m: int = field(init=False)

    def __post_init__(self) -> None:
        if self.p < 1 or self.q < 1:
            raise ValueError("p and q must be positive integers")
        if self.omega0 <= 0:
            raise ValueError("omega0 must be positive")
        m = math.gcd(self.p, self.q)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "p0", self.p // m)
        object.__setattr__(self, "q0", self.q // m)

    @property
    def omega_x(self) -> float:
        return self.q * self.omega0

    @property
    def omega_y(self) -> float:
        return self.p * self.omega0

    @property
    def fundamental(self) -> bool:
        return self.m == 1


@dataclass(frozen=True)
class AmplitudePair:
    """Two-mode coherent amplitudes: alpha real >= 0, beta = beta_abs e^{i phi}."""

    alpha: float
    beta_abs: float
    phi: float = 0.0

    def __post_init__(self) -> None:
        if self.alpha < 0 or self.beta_abs < 0:
            raise ValueError("amplitude magnitudes must be nonnegative")

    @property
    def beta(self) -> complex:
        return self.beta_abs * cmath.exp(1j * self.phi)

    def zeta(self) -> tuple[complex, bool]:
        """Stereographic parameter alpha / beta as (value, at_infinity)."""
        if self.beta_abs == 0.0:
            if self.alpha == 0.0:
                raise ValueError("alpha and beta cannot both vanish")
            return 0j, True
        return self.alpha / self.beta_abs * cmath.exp(-1j * self.phi), False

    def xi(self, p: int, q: int) -> tuple[complex, bool]:
        """Anisotropic control parameter alpha**p / beta**q as (value, at_infinity)."""
        if self.beta_abs == 0.0:
            if self.alpha == 0.0:
                raise ValueError("alpha and beta cannot both vanish")
            return 0j, True
        mag = self.alpha ** p / self.beta_abs ** q
        return mag * cmath.exp(-1j * q * self.phi), False


def state_energy(N: int, p: int, q: int, omega0: float = 1.0) -> float:
    """Energy omega0 (N p q + (q + p) / 2) shared by every ket of the subspace."""
    return omega0 * (N * p * q + 0.5 * (p + q))


@dataclass(frozen=True)
class LissajousState:
    """Normalized state in one degenerate subspace, ordered by ascending K.

    ``nx[K] = p K`` and ``ny[K] = q (N - K)`` label the oscillator ket of
    each coefficient; every entry satisfies q nx + p ny = N p q.
    """

    params: OscillatorParams
    N: int
    nx: np.ndarray
    ny: np.ndarray
    coeffs: np.ndarray
    provenance: str

    @property
    def energy(self) -> float:
        return state_energy(self.N, self.params.p, self.params.q, self.params.omega0)

    def entries(self) -> list[tuple[int, int, complex]]:
        return [
            (int(a), int(b), complex(c))
            for a, b, c in zip(self.nx, self.ny, self.coeffs)
        ]

    def to_json_dict(self) -> dict:
        return {
            "params": {
                "p": self.params.p,
                "q": self.params.q,
                "omega0": self.params.omega0,
                "p0": self.params.p0,
                "q0": self.params.q0,
                "m": self.params.m,
            },
            "N": self.N,
            "coeffs": [
                [int(a), int(b), float(c.real), float(c.imag)]
                for a, b, c in zip(self.nx, self.ny, self.coeffs)
            ],
            "provenance": self.provenance,
            "energy": self.energy,
        }

    @staticmethod
    def from_json_dict(data: dict) -> "LissajousState":
        params = OscillatorParams(
            p=int(data["params"]["p"]),
            q=int(data["params"]["q"]),
            omega0=float(data["params"]["omega0"]),
        )
        rows = data["coeffs"]
        nx = np.array([int(r[0]) for r in rows])
        ny = np.array([int(r[1]) for r in rows])
        coeffs = np.array([complex(r[2], r[3]) for r in rows])
        return LissajousState(
            params=params,
            N=int(data["N"]),
            nx=nx,
            ny=ny,
            coeffs=coeffs,
            provenance=str(data["provenance"]),
        )


def _assemble(
    N: int, p: int, q: int, coeffs: np.ndarray, omega0: float, provenance: str
) -> LissajousState:
    ks = np.arange(N + 1)
    norm = float(np.linalg.norm(coeffs))
    if norm == 0.0:
        raise ValueError("all coefficients vanished; state is undefined")
    return LissajousState(
        params=OscillatorParams(p=p, q=q, omega0=omega0),
        N=N,
        nx=p * ks,
        ny=q * (N - ks),
        coeffs=coeffs / norm,
        provenance=provenance,
    )


def build_anisotropic(
    N: int,
    p: int,
    q: int,
    xi: complex,
    *,
    omega0: float = 1.0,
    xi_at_infinity: bool = False,
    provenance: str = "aniso-fundamental",
) -> LissajousState:
    """State with c_K proportional to w_K**(1/2) xi**K, normalized.

    ``xi_at_infinity`` selects the K = N limit ket |p N, 0> (the xi -> inf
    endpoint where the largest-K term dominates everything else).
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    coeffs = np.zeros(N + 1, dtype=complex)
    if xi_at_infinity:
        coeffs[N] = 1.0
        return _assemble(N, p, q, coeffs, omega0, provenance)
    xi = complex(xi)
    mag = abs(xi)
    ks = np.arange(N + 1)
    half_log_w = 0.5 * np.array([log_weight(N, int(k), p, q) for k in ks])
    if mag == 0.0:
        coeffs[0] = 1.0
        return _assemble(N, p, q, coeffs, omega0, provenance)
    log_amp = half_log_w + ks * math.log(mag)
    log_amp -= log_amp.max()  # max-shift: exp never overflows
    phase = cmath.phase(xi)
    coeffs = np.exp(log_amp) * np.exp(1j * phase * ks)
    return _assemble(N, p, q, coeffs, omega0, provenance)


def build_isotropic(
    N: int,
    zeta: complex,
    *,
    omega0: float = 1.0,
    zeta_at_infinity: bool = False,
    provenance: str = "iso-fundamental",
) -> LissajousState:
    """SU(2) coherent state: c_K = (1 + |zeta|^2)^(-N/2) C(N,K)^(1/2) zeta^K.

    Built through the general anisotropic path with p = q = 1 (the binomial
    closed form is recovered because the weights reduce to C(N, K)).
    """
    return build_anisotropic(
        N,
        1,
        1,
        zeta,
        omega0=omega0,
        xi_at_infinity=zeta_at_infinity,
        provenance=provenance,
    )


def log_norm_const(N: int, p: int, q: int, xi_abs: float) -> float:
    """log of NORM(N, p, q, |xi|) = -0.5 log sum_L w_L |xi|**(2 L).

    This is the prefactor that normalizes the raw sum over w_L**(1/2) xi**L
    kets; for p = q = 1 it collapses to -N/2 log(1 + |xi|**2) by the binomial
    theorem.
    """
    if xi_abs < 0:
        raise ValueError("|xi| must be nonnegative")
    ls = np.arange(N + 1)
    log_w = np.array([log_weight(N, int(l), p, q) for l in ls])
    if xi_abs == 0.0:
        return -0.5 * float(log_w[0])
    terms = log_w + 2.0 * ls * math.log(xi_abs)
    return -0.5 * float(logsumexp(terms))


def higher_harmonic_decomposition(
    N: int,
    m: int,
    p0: int,
    q0: int,
    amp: AmplitudePair,
    *,
    omega0: float = 1.0,
) -> tuple[complex, list[LissajousState]]:
    """Expand the (m p0, m q0) state as a superposition of m fundamentals.

    Returns ``(weight, terms)`` where each term is a fundamental (p0, q0)
    state in the m N subspace at base frequency m omega0, its control
    parameter rotated to |xi_0| e^{-i (2 pi n + q0 m phi) / m}, and

        weight * sum(term coefficient vectors) == build_anisotropic(N, m p0, m q0, xi)

    entrywise: the roots-of-unity phases cancel every K' not divisible by m.
    """
    if m < 2:
        raise ValueError("m must be >= 2 for a nontrivial decomposition")
    if math.gcd(p0, q0) != 1:
        raise ValueError("p0 and q0 must be coprime")
    p, q = m * p0, m * q0
    xi_pq, inf_pq = amp.xi(p, q)
    xi_0, _ = amp.xi(p0, q0)
    if inf_pq:
        raise ValueError("decomposition requires beta != 0")
    log_w = log_norm_const(N, p, q, abs(xi_pq)) - log_norm_const(
        m * N, p0, q0, abs(xi_0)
    )
    weight = complex(math.exp(log_w) / m)
    terms = []
    for n in range(m):
        angle = -(2.0 * math.pi * n + q0 * m * amp.phi) / m
        xi_n = abs(xi_0) * cmath.exp(1j * angle)
        terms.append(
            build_anisotropic(
                m * N,
                p0,
                q0,
                xi_n,
                omega0=m * omega0,
                provenance="higher-harmonic",
            )
        )
    return weight, terms


def _poisson_cutoff(a: float) -> int:
    # Past n ~ |a|^2 + 12|a| + 30 a Poisson tail is < 1e-15 of the mass.
    return int(math.ceil(a * a + 12.0 * a + 30.0))


def project_coherent_oracle(
    amp: AmplitudePair,
    N: int,
    p: int,
    q: int,
    *,
    omega0: float = 1.0,
    tail_tol: float = 1e-9,
) -> LissajousState:
    """Brute-force route: truncate |alpha, beta> in Fock space and project.

    Populates the full two-mode coefficient box c[n1, n2] = exp(-(|alpha|^2
    + |beta|^2)/2) alpha^n1 beta^n2 / sqrt(n1! n2!), checks the neglected
    tail mass against ``tail_tol``, then keeps only the entries at
    (p K, q (N - K)) and renormalizes.  Shares no code with the closed-form
    builders, which makes it a genuinely independent cross-check.
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    if amp.alpha == 0.0 and amp.beta_abs == 0.0:
        raise ValueError("alpha and beta cannot both vanish")
    n1_max = max(_poisson_cutoff(amp.alpha), p * N)
    n2_max = max(_poisson_cutoff(amp.beta_abs), q * N)
    n1 = np.arange(n1_max + 1)
    n2 = np.arange(n2_max + 1)
    pref = -0.5 * (amp.alpha ** 2 + amp.beta_abs ** 2)
    with np.errstate(divide="ignore"):
        log_a = np.where(n1 == 0, 0.0, n1 * np.log(np.maximum(amp.alpha, 1e-300)))
        log_b = np.where(n2 == 0, 0.0, n2 * np.log(np.maximum(amp.beta_abs, 1e-300)))
    if amp.alpha == 0.0:
        log_a = np.where(n1 == 0, 0.0, -np.inf)
    if amp.beta_abs == 0.0:
        log_b = np.where(n2 == 0, 0.0, -np.inf)
    log_mag = (
        pref
        + (log_a - 0.5 * gammaln(n1 + 1))[:, None]
        + (log_b - 0.5 * gammaln(n2 + 1))[None, :]
    )
    mags = np.exp(log_mag)
    mass = float(np.sum(mags * mags))
    if 1.0 - mass > tail_tol:
        raise ValueError(
            f"truncated box keeps mass {mass:.17g}; tail exceeds {tail_tol:g}"
        )
    box = mags * np.exp(1j * amp.phi * n2)[None, :]
    ks = np.arange(N + 1)
    selected = box[p * ks, q * (N - ks)]
    if not np.any(selected != 0.0):
        raise ValueError("projection selected only vanishing coefficients")
    return _assemble(N, p, q, selected.astype(complex), omega0, "oracle")


def su2_from_bloch(
    N: int, theta: float, phi: float, *, omega0: float = 1.0
) -> LissajousState:
    """Isotropic state from Bloch angles: zeta = tan(theta/2) e^{-i phi}.

    theta = 0 is the single ket |0, N> (south pole); theta = pi, where the
    tangent diverges, is handled as the |N, 0> limit.
    """
    if not 0.0 <= theta <= math.pi:
        raise ValueError("theta must lie in [0, pi]")
    if theta == math.pi:
        return build_isotropic(
            N, 0j, omega0=omega0, zeta_at_infinity=True, provenance="su2-bloch"
        )
    zeta = math.tan(0.5 * theta) * cmath.exp(-1j * phi)
    return build_isotropic(N, zeta, omega0=omega0, provenance="su2-bloch")


@dataclass(frozen=True)
class AngularMomentumState:
    """Isotropic-subspace state in the |J, M> labeling: J = N/2, M = K - J."""

    J: float
    M: np.ndarray
    coeffs: np.ndarray
    omega0: float = 1.0
    provenance: str = "angular"


def fock_to_angular(state: LissajousState) -> AngularMomentumState:
    """Relabel an isotropic state's kets from (K, N-K) to (J, M) without touching coefficients."""
    if not (state.params.p == 1 and state.params.q == 1):
        raise ValueError("angular-momentum labels apply to the isotropic case only")
    J = 0.5 * state.N
    M = state.nx - J
    return AngularMomentumState(
        J=J,
        M=M.astype(float),
        coeffs=state.coeffs.copy(),
        omega0=state.params.omega0,
        provenance=state.provenance,
    )


def angular_to_fock(ang: AngularMomentumState) -> LissajousState:
    """Inverse relabeling; coefficient entries round-trip bit-for-bit."""
    N = int(round(2 * ang.J))
    ks = np.round(ang.M + ang.J).astype(int)
    if not np.array_equal(ks, np.arange(N + 1)):
        raise ValueError("M values must cover -J..J in ascending steps of 1")
    return LissajousState(
        params=OscillatorParams(p=1, q=1, omega0=ang.omega0),
        N=N,
        nx=ks,
        ny=N - ks,
        coeffs=ang.coeffs.copy(),
        provenance=ang.provenance,
    )
