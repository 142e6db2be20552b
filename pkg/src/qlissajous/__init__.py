"""Quantum Lissajous states of the two-dimensional harmonic oscillator.

Construction of stationary states localized along classical Lissajous
figures (projections of two-mode coherent states onto degenerate
subspaces), field evaluation with analytic currents, vortex detection,
semiclassical wavepackets, and deterministic file/figure output.
"""

__version__ = "0.1.0"

from .classical import ClassicalCurve, closure_analysis
from .fields import FieldGrid, WaveField, default_extent, detect_vortices, eval_state, quadrature
from .states import (
    AmplitudePair,
    LissajousState,
    OscillatorParams,
    build_anisotropic,
    build_isotropic,
    higher_harmonic_decomposition,
    project_coherent_oracle,
    su2_from_bloch,
)

__all__ = [
    "__version__",
    "AmplitudePair",
    "ClassicalCurve",
    "FieldGrid",
    "LissajousState",
    "OscillatorParams",
    "WaveField",
    "build_anisotropic",
    "build_isotropic",
    "closure_analysis",
    "default_extent",
    "detect_vortices",
    "eval_state",
    "higher_harmonic_decomposition",
    "project_coherent_oracle",
    "quadrature",
    "su2_from_bloch",
]
