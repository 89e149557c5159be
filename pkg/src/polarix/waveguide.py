"""Rectangular-waveguide mode geometry and emitter coupling.

Unit system (used across the whole package): lengths in units of the
waveguide width ``a``, wavenumbers in units of ``pi/a``, and all rates and
detunings in units of the reference emission rate ``Gamma_0``.  With these
units the cutoff of a transverse dimension ``dim`` sits at wavenumber
``a/dim`` and the guided z-wavelength of mode B is ``2 a / k_Bz``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EvanescentModeError
from .polarization import ellipse_components, stokes_components

__all__ = [
    "GeometryConfig",
    "EmitterConfig",
    "CrossSectionMap",
    "kz",
    "mode_wavenumbers",
    "bz_wavelength",
    "mode_profile",
    "coupling_amplitudes",
    "emission_rates",
    "cross_section_map",
]

DEFAULT_K = 1.3  # pi/a units, as in the robustness studies


def kz(k: float, transverse_dim: float, a: float = 1.0):
    """z-direction wavenumber sqrt(k^2 - cutoff^2) of a TE mode.

    ``k`` in pi/a units, ``transverse_dim`` and ``a`` in units of a; mode A
    uses the waveguide height b, mode B the width a.  Raises
    EvanescentModeError at or below cutoff.
    """
    cutoff = a / transverse_dim
    if np.any(np.asarray(k) <= cutoff):
        raise EvanescentModeError(
            f"mode with cutoff {cutoff!r} pi/a is evanescent at k = {k!r} pi/a")
    return np.sqrt(k * k - cutoff * cutoff)


@dataclass(frozen=True)
class GeometryConfig:
    """Waveguide cross-section, emitter position and end-mirror parameters.

    ``d`` is the emitter-mirror separation; by default it is placed at the
    antinode ``0.75 * bz_wavelength`` for the configured ``k``.  Mirror
    reflection coefficients may be complex with magnitude at most 1.
    """

    a: float = 1.0
    b: float = 1.0
    x: float = 0.5
    y: float = 0.5
    d: float | None = None
    r_am: complex = field(default=-1.0 + 0.0j)
    r_bm: complex = field(default=-1.0 + 0.0j)
    k: float = DEFAULT_K

    def __post_init__(self):
        for name in ("a", "b", "x", "y", "k"):
            object.__setattr__(self, name, float(getattr(self, name)))
        object.__setattr__(self, "r_am", complex(self.r_am))
        object.__setattr__(self, "r_bm", complex(self.r_bm))
        if self.a <= 0.0 or self.b <= 0.0:
            raise ValueError("waveguide dimensions must be positive")
        if not 0.0 <= self.x <= self.a:
            raise ValueError(f"x = {self.x!r} outside [0, a]")
        if not 0.0 <= self.y <= self.b:
            raise ValueError(f"y = {self.y!r} outside [0, b]")
        if abs(self.r_am) > 1.0 + 1e-12 or abs(self.r_bm) > 1.0 + 1e-12:
            raise ValueError("mirror reflection magnitudes must not exceed 1")
        if self.k <= max(1.0, self.a / self.b):
            raise EvanescentModeError(
                f"k = {self.k!r} pi/a leaves a mode below cutoff "
                f"(need k > {max(1.0, self.a / self.b)!r})")
        if self.d is None:
            object.__setattr__(self, "d", 0.75 * bz_wavelength(self))
        else:
            object.__setattr__(self, "d", float(self.d))
        if self.d <= 0.0:
            raise ValueError("emitter-mirror separation d must be positive")


@dataclass(frozen=True)
class EmitterConfig:
    """Dipole orientation theta (radians in [0, pi)) and dissipation rate."""

    theta: float = math.pi / 4
    gamma_e: float = 0.0
    gamma0: float = 1.0

    def __post_init__(self):
        for name in ("theta", "gamma_e", "gamma0"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not 0.0 <= self.theta < math.pi:
            raise ValueError(f"theta = {self.theta!r} outside [0, pi)")
        if self.gamma_e < 0.0:
            raise ValueError("gamma_e must be non-negative")
        if self.gamma0 <= 0.0:
            raise ValueError("gamma0 must be positive")


def mode_wavenumbers(geom: GeometryConfig):
    """(k_A, k_B) z-wavenumbers in pi/a units; A is cut off by b, B by a."""
    return kz(geom.k, geom.b, geom.a), kz(geom.k, geom.a, geom.a)


def bz_wavelength(geom: GeometryConfig) -> float:
    """Guided z-wavelength of mode B in units of a (the paper's d scale)."""
    return 2.0 * geom.a / float(kz(geom.k, geom.a, geom.a))


def mode_profile(mode: str, x, y, geom: GeometryConfig):
    """Transverse field factor of a mode at (x, y): sin profile in [0, 1]."""
    if np.any((np.asarray(x) < 0) | (np.asarray(x) > geom.a)) or np.any(
            (np.asarray(y) < 0) | (np.asarray(y) > geom.b)):
        raise ValueError("position outside the waveguide cross-section")
    m = mode.upper()
    if m == "A":
        return np.sin(np.pi * y / geom.b)
    if m == "B":
        return np.sin(np.pi * x / geom.a)
    raise ValueError(f"unknown mode {mode!r}")


def coupling_amplitudes(geom: GeometryConfig, em: EmitterConfig):
    """Signed 1D coupling amplitudes (V_A, V_B) at the emitter position.

    Normalized so that the emission rates are 2 V^2 in Gamma_0 units.
    """
    g = math.sqrt(em.gamma0)
    v_a = -g * float(mode_profile("A", geom.x, geom.y, geom)) * math.cos(em.theta)
    v_b = -g * float(mode_profile("B", geom.x, geom.y, geom)) * math.sin(em.theta)
    return v_a, v_b


def emission_rates(geom: GeometryConfig, em: EmitterConfig,
                   group_velocity_correction: bool = False):
    """Emission rates (Gamma_A, Gamma_B) into the two modes, each in [0, 2].

    With ``group_velocity_correction`` the A rate is rescaled by k_B/k_A to
    account for the slightly different group velocities when b != a, taking
    mode B as the reference; the robustness studies leave this off.
    """
    v_a, v_b = coupling_amplitudes(geom, em)
    gamma_a = 2.0 * v_a * v_a
    gamma_b = 2.0 * v_b * v_b
    if group_velocity_correction:
        k_a, k_b = mode_wavenumbers(geom)
        gamma_a *= float(k_b) / float(k_a)
    return gamma_a, gamma_b


@dataclass(frozen=True)
class CrossSectionMap:
    """Grid of local polarization over the waveguide cross-section."""

    x: np.ndarray          # shape (nx,)
    y: np.ndarray          # shape (ny,)
    eta: np.ndarray        # shape (nx, ny)
    chi: np.ndarray        # shape (nx, ny)
    amplitude: np.ndarray  # shape (nx, ny)


def cross_section_map(geom: GeometryConfig, phase_diff: float = math.pi / 2,
                      grid: int = 101) -> CrossSectionMap:
    """Polarization of the superposed mode fields across the cross-section.

    At each point the local field is [sin(pi y/b), sin(pi x/a) e^{i phase}];
    with a quarter-wave phase and a = b it is circular at the center and on
    the diagonals, elliptical elsewhere.
    """
    if grid < 2:
        raise ValueError("grid resolution must be at least 2 per axis")
    xs = np.linspace(0.0, geom.a, grid)
    ys = np.linspace(0.0, geom.b, grid)
    xg, yg = np.meshgrid(xs, ys, indexing="ij")
    c_a = np.sin(np.pi * yg / geom.b).astype(complex)
    c_b = np.sin(np.pi * xg / geom.a) * np.exp(1j * phase_diff)
    s1, s2, s3 = stokes_components(c_a, c_b)
    eta, chi = ellipse_components(s1, s2, s3)
    amplitude = np.sqrt(np.abs(c_a) ** 2 + np.abs(c_b) ** 2)
    return CrossSectionMap(x=xs, y=ys, eta=eta, chi=chi, amplitude=amplitude)
