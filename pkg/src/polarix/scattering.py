"""Single-photon scattering kernels.

Two code paths, tied together by tests rather than derived from each other
at runtime:

* :func:`ideal_scattering_matrix` - the closed form for an emitter at the
  cross-section center of a square guide with a perfect end mirror at the
  antinode separation, parameterized by the dipole angle theta and the
  drive parameter alpha alone.
* :func:`full_scattering` - the complete emitter-plus-mirror stationary
  solution with every non-ideality: unequal width and height, off-center
  emitter, arbitrary emitter-mirror separation, complex sub-unit mirror
  reflectivities and external dissipation.

Gauge: the mirror sits at the coordinate origin and the emitter at z = d,
so the mirror-propagation phase factors are 1 and the cross-mode factor is
exp(+-i (k_B - k_A) d).  This differs from choosing the origin so those
factors become -1 by a global phase only, which no fidelity or Stokes
output can see.

The drive parameter ``alpha`` is an extended real: ``math.inf`` (either
sign) marks two-photon resonance, where the emitter is transparent and the
ideal matrix is the identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateConfigurationError, InfeasibleDriveError
from .polarization import JonesState
from .waveguide import EmitterConfig, GeometryConfig, coupling_amplitudes, mode_wavenumbers

__all__ = [
    "DriveConfig",
    "ScatteringMatrix",
    "FullScattering",
    "alpha_of_drive",
    "drive_for_alpha",
    "ideal_scattering_matrix",
    "full_scattering",
    "scatter",
    "stokes_of_output",
    "stokes_closed_form",
    "matrix_elements_grid",
]

_SQRT_2PI = math.sqrt(2.0 * math.pi)


def alpha_of_drive(omega_rabi: float, delta_ge: float, delta_es: float) -> float:
    """Effective drive parameter Omega^2 / [4 (D_ge - D_es)] - D_ge.

    Returns ``math.inf`` at two-photon resonance (delta_ge == delta_es with
    a nonzero drive); with the drive off the s-level decouples and alpha
    collapses to -delta_ge.
    """
    if omega_rabi < 0.0:
        raise ValueError("Rabi frequency must be non-negative")
    if omega_rabi == 0.0:
        return -delta_ge
    if delta_ge == delta_es:
        return math.inf
    return omega_rabi**2 / (4.0 * (delta_ge - delta_es)) - delta_ge


def drive_for_alpha(alpha_target: float, delta_ge: float, delta_es: float) -> float:
    """Rabi frequency 2 sqrt((D_ge - D_es)(D_ge + alpha)) realizing alpha.

    Raises InfeasibleDriveError when the product under the root is
    negative; the caller must move delta_es to the other side of delta_ge.
    """
    if math.isinf(alpha_target):
        raise ValueError("two-photon resonance needs delta_es = delta_ge, any Omega > 0")
    if delta_ge == delta_es and alpha_target != -delta_ge:
        raise InfeasibleDriveError(
            "delta_es = delta_ge realizes only the transparent identity; "
            "detune the control field to reach a finite alpha")
    product = (delta_ge - delta_es) * (delta_ge + alpha_target)
    if product < 0.0:
        raise InfeasibleDriveError(
            f"(delta_ge - delta_es)(delta_ge + alpha) = {product!r} < 0; "
            "move delta_es to the other side of delta_ge")
    return 2.0 * math.sqrt(product)


@dataclass(frozen=True)
class DriveConfig:
    """Drive parameter alpha, optionally with the realizing field triple.

    When (omega_rabi, delta_ge, delta_es) are present they must reproduce
    alpha through :func:`alpha_of_drive` within 1e-10.
    """

    alpha: float
    omega_rabi: float | None = None
    delta_ge: float | None = None
    delta_es: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        triple = (self.omega_rabi, self.delta_ge, self.delta_es)
        if any(v is not None for v in triple):
            if any(v is None for v in triple):
                raise ValueError("drive triple must be given completely or not at all")
            for name in ("omega_rabi", "delta_ge", "delta_es"):
                object.__setattr__(self, name, float(getattr(self, name)))
            implied = alpha_of_drive(self.omega_rabi, self.delta_ge, self.delta_es)
            if math.isinf(self.alpha) or math.isinf(implied):
                consistent = math.isinf(self.alpha) and math.isinf(implied)
            else:
                consistent = abs(self.alpha - implied) <= 1e-10 * max(1.0, abs(implied))
            if not consistent:
                raise ValueError(
                    f"alpha = {self.alpha!r} inconsistent with drive triple "
                    f"(implies {implied!r})")
        if math.isnan(self.alpha):
            raise ValueError("alpha must not be NaN")

    @classmethod
    def from_alpha(cls, alpha: float) -> "DriveConfig":
        return cls(alpha=alpha)

    @classmethod
    def from_drive(cls, omega_rabi: float, delta_ge: float, delta_es: float) -> "DriveConfig":
        return cls(alpha=alpha_of_drive(omega_rabi, delta_ge, delta_es),
                   omega_rabi=omega_rabi, delta_ge=delta_ge, delta_es=delta_es)

    @property
    def is_two_photon_resonant(self) -> bool:
        return math.isinf(self.alpha)


@dataclass(frozen=True)
class ScatteringMatrix:
    """2x2 complex map from input to output Jones state."""

    r_aa: complex
    r_ab: complex
    r_ba: complex
    r_bb: complex

    def __post_init__(self):
        for name in ("r_aa", "r_ab", "r_ba", "r_bb"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    def as_array(self) -> np.ndarray:
        return np.array([[self.r_aa, self.r_ab], [self.r_ba, self.r_bb]])

    @classmethod
    def identity(cls) -> "ScatteringMatrix":
        return cls(1.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True)
class FullScattering:
    """All stationary amplitudes of the emitter-plus-mirror solution.

    First subscript: mode, second: input mode.  ``t_*`` are the amplitudes
    moving toward the mirror between emitter and mirror, ``r_region_*`` the
    returning amplitudes in the same region, ``c_e_* / c_s_*`` the excited-
    and metastable-state amplitudes per input mode.
    """

    matrix: ScatteringMatrix
    t_aa: complex
    t_ba: complex
    t_ab: complex
    t_bb: complex
    r_region_aa: complex
    r_region_ba: complex
    r_region_ab: complex
    r_region_bb: complex
    c_e_a: complex
    c_s_a: complex
    c_e_b: complex
    c_s_b: complex


def ideal_scattering_matrix(em: EmitterConfig, alpha: float) -> ScatteringMatrix:
    """Closed-form scattering matrix of the ideally placed emitter.

    Hard-codes the antinode/center rates Gamma_A = 2 Gamma_0 cos^2 theta and
    Gamma_B = 2 Gamma_0 sin^2 theta.  Two-photon resonance (alpha infinite)
    gives the identity: the drive makes the emitter transparent.
    """
    if math.isinf(alpha):
        return ScatteringMatrix.identity()
    g0 = em.gamma0
    den = 2.0 * g0 + em.gamma_e / 2.0 - 1j * alpha
    c2 = math.cos(2.0 * em.theta)
    s2 = math.sin(2.0 * em.theta)
    off = -2.0 * g0 * s2 / den
    return ScatteringMatrix(
        r_aa=(-2.0 * g0 * c2 + em.gamma_e / 2.0 - 1j * alpha) / den,
        r_ab=off,
        r_ba=off,
        r_bb=(2.0 * g0 * c2 + em.gamma_e / 2.0 - 1j * alpha) / den,
    )


def matrix_elements_grid(*, k_a, k_b, d, v_a, v_b, alpha, gamma_e, r_am, r_bm):
    """Reflection-matrix elements of the full model; numpy-broadcastable.

    All wavenumbers in pi/a units, lengths in a units; ``v_a, v_b`` are the
    signed coupling amplitudes from :func:`waveguide.coupling_amplitudes`.
    Returns (r_aa, r_ab, r_ba, r_bb, den) where ``den`` is the shared
    resonance denominator.
    """
    p_a = np.pi * k_a
    p_b = np.pi * k_b
    phi_a = 2.0 * p_a * d
    phi_b = 2.0 * p_b * d
    gamma_a = 2.0 * v_a * v_a
    gamma_b = 2.0 * v_b * v_b
    m_a = 1.0 + r_am * np.exp(1j * phi_a)
    m_b = 1.0 + r_bm * np.exp(1j * phi_b)
    den = alpha + 0.5j * gamma_e + 0.5j * m_a * gamma_a + 0.5j * m_b * gamma_b
    if np.any(den == 0.0):
        raise DegenerateConfigurationError(
            "emitter effectively decoupled exactly on resonance; "
            "scattering amplitudes are an undefined 0/0")
    cross = v_a * v_b
    r_aa = ((alpha + 0.5j * gamma_e - 0.5j * gamma_a + 0.5j * m_b * gamma_b) * r_am
            - 0.5j * gamma_a * np.exp(-1j * phi_a)) / den
    r_bb = ((alpha + 0.5j * gamma_e - 0.5j * gamma_b + 0.5j * m_a * gamma_a) * r_bm
            - 0.5j * gamma_b * np.exp(-1j * phi_b)) / den
    r_ba = (-1j * cross * m_a * (r_bm + np.exp(-1j * phi_b))
            * np.exp(1j * (p_b - p_a) * d)) / den
    r_ab = (-1j * cross * m_b * (r_am + np.exp(-1j * phi_a))
            * np.exp(1j * (p_a - p_b) * d)) / den
    return r_aa, r_ab, r_ba, r_bb, den


def full_scattering(geom: GeometryConfig, em: EmitterConfig,
                    drive: DriveConfig) -> FullScattering:
    """Solve the emitter-plus-mirror model for both input modes.

    Evaluates every stationary amplitude at k_A = kz(k, b), k_B = kz(k, a)
    with the mirror at the origin.  At two-photon resonance the analytic
    transparent limit is returned instead of dividing by a huge alpha.
    """
    k_a, k_b = mode_wavenumbers(geom)
    k_a, k_b = float(k_a), float(k_b)
    v_a, v_b = coupling_amplitudes(geom, em)
    gamma_a = 2.0 * v_a * v_a
    gamma_b = 2.0 * v_b * v_b
    p_a = math.pi * k_a
    p_b = math.pi * k_b
    phi_a = 2.0 * p_a * geom.d
    phi_b = 2.0 * p_b * geom.d
    m_a = 1.0 + geom.r_am * np.exp(1j * phi_a)
    m_b = 1.0 + geom.r_bm * np.exp(1j * phi_b)

    if drive.is_two_photon_resonant:
        # transparent limit: the photon never populates |e>, only |s> via
        # the dark state; the matrix is bare mirror reflection
        omega = drive.omega_rabi if drive.omega_rabi else 2.0 * em.gamma0
        c_s_a = -2.0 * v_a * np.exp(-1j * p_a * geom.d) * m_a / (omega * _SQRT_2PI)
        c_s_b = -2.0 * v_b * np.exp(-1j * p_b * geom.d) * m_b / (omega * _SQRT_2PI)
        matrix = ScatteringMatrix(geom.r_am, 0.0, 0.0, geom.r_bm)
        return FullScattering(
            matrix=matrix,
            t_aa=1.0, t_ba=0.0, t_ab=0.0, t_bb=1.0,
            r_region_aa=geom.r_am, r_region_ba=0.0,
            r_region_ab=0.0, r_region_bb=geom.r_bm,
            c_e_a=0.0, c_s_a=complex(c_s_a), c_e_b=0.0, c_s_b=complex(c_s_b))

    if drive.alpha == 0.0 and em.gamma_e == 0.0 and gamma_a == 0.0 and gamma_b == 0.0:
        raise DegenerateConfigurationError(
            "no waveguide coupling, no dissipation and alpha = 0: "
            "the emitter response is an undefined 0/0")

    r_aa, r_ab, r_ba, r_bb, den = matrix_elements_grid(
        k_a=k_a, k_b=k_b, d=geom.d, v_a=v_a, v_b=v_b,
        alpha=drive.alpha, gamma_e=em.gamma_e, r_am=geom.r_am, r_bm=geom.r_bm)

    cross = v_a * v_b
    t_aa = (drive.alpha + 0.5j * em.gamma_e + 0.5j * m_b * gamma_b) / den
    t_bb = (drive.alpha + 0.5j * em.gamma_e + 0.5j * m_a * gamma_a) / den
    t_ba = -1j * cross * m_a * np.exp(1j * (p_b - p_a) * geom.d) / den
    t_ab = -1j * cross * m_b * np.exp(1j * (p_a - p_b) * geom.d) / den
    c_e_a = np.exp(-1j * p_a * geom.d) * m_a * v_a / _SQRT_2PI / den
    c_e_b = np.exp(-1j * p_b * geom.d) * m_b * v_b / _SQRT_2PI / den
    if drive.omega_rabi and drive.delta_es != drive.delta_ge:
        s_factor = drive.omega_rabi / (2.0 * (drive.delta_es - drive.delta_ge))
    else:
        s_factor = 0.0  # drive off: the metastable level stays empty
    return FullScattering(
        matrix=ScatteringMatrix(complex(r_aa), complex(r_ab), complex(r_ba), complex(r_bb)),
        t_aa=complex(t_aa), t_ba=complex(t_ba), t_ab=complex(t_ab), t_bb=complex(t_bb),
        r_region_aa=complex(t_aa * geom.r_am), r_region_ba=complex(t_ba * geom.r_bm),
        r_region_ab=complex(t_ab * geom.r_am), r_region_bb=complex(t_bb * geom.r_bm),
        c_e_a=complex(c_e_a), c_s_a=complex(c_e_a * s_factor),
        c_e_b=complex(c_e_b), c_s_b=complex(c_e_b * s_factor))


def scatter(s: ScatteringMatrix, state: JonesState) -> JonesState:
    """Apply a scattering matrix to a normalized input state."""
    if not state.is_normalized():
        raise ValueError("scattering input must be normalized")
    return JonesState(s.r_aa * state.c_a + s.r_ab * state.c_b,
                      s.r_ba * state.c_a + s.r_bb * state.c_b)


def stokes_closed_form(theta, alpha, gamma0: float = 1.0):
    """Stokes triple of the lossless output for an H input; broadcastable.

    Infinite alpha is mapped to the transparent point (1, 0, 0).
    """
    theta = np.asarray(theta, dtype=float)
    alpha = np.asarray(alpha, dtype=float)
    u = np.where(np.isinf(alpha), 1.0, alpha) / (2.0 * gamma0)
    w = 1.0 / (1.0 + u * u)
    s1 = np.where(np.isinf(alpha), 1.0, (np.cos(4.0 * theta) + u * u) * w)
    s2 = np.where(np.isinf(alpha), 0.0, np.sin(4.0 * theta) * w)
    s3 = np.where(np.isinf(alpha), 0.0, 2.0 * u * np.sin(2.0 * theta) * w)
    return s1, s2, s3


def stokes_of_output(theta: float, alpha: float, gamma0: float = 1.0):
    """Closed-form Stokes vector of the lossless scattered H photon."""
    from .polarization import StokesVector

    s1, s2, s3 = stokes_closed_form(theta, alpha, gamma0)
    return StokesVector(float(s1), float(s2), float(s3))
