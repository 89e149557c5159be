"""Jones-vector and Stokes/Poincare algebra for the two waveguide modes.

A polarization state is a pair of complex amplitudes on the (A, B) mode
basis, where mode A is the horizontally polarized TE01 mode and mode B the
vertically polarized TE10 mode.  Input states are normalized; scattered
output states may be sub-normalized when the emitter dissipates or the end
mirror is lossy, and fidelities are deliberately loss-inclusive.

Handedness convention used repo-wide: the Stokes phase is
``phi = arg(c_a) - arg(c_b)``, which places the right-circular state
``[exp(i pi/4), exp(-i pi/4)]/sqrt(2)`` at the north pole (0, 0, +1).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "JonesState",
    "StokesVector",
    "EllipseAngles",
    "named_state",
    "linear_state",
    "parse_state",
    "stokes_components",
    "stokes_from_jones",
    "ellipse_components",
    "ellipse_angles",
    "fidelity",
    "dissipation_probability",
]

#: maximum state norm before a JonesState is rejected as unphysical
NORM_SLACK = 1e-9

#: tolerance on |c_a|^2 + |c_b|^2 - 1 for states used as scattering inputs
INPUT_NORM_TOL = 1e-12


@dataclass(frozen=True)
class JonesState:
    """Two complex mode amplitudes (c_a, c_b); dimensionless.

    Norms above ``1 + NORM_SLACK`` are rejected: no physical scattering
    configuration amplifies a single photon.
    """

    c_a: complex
    c_b: complex

    def __post_init__(self):
        object.__setattr__(self, "c_a", complex(self.c_a))
        object.__setattr__(self, "c_b", complex(self.c_b))
        if not (math.isfinite(self.c_a.real) and math.isfinite(self.c_a.imag)
                and math.isfinite(self.c_b.real) and math.isfinite(self.c_b.imag)):
            raise ValueError("Jones amplitudes must be finite")
        if self.norm > 1.0 + NORM_SLACK:
            raise ValueError(f"Jones state norm {self.norm!r} exceeds 1")

    @property
    def norm_sq(self) -> float:
        return abs(self.c_a) ** 2 + abs(self.c_b) ** 2

    @property
    def norm(self) -> float:
        return math.sqrt(self.norm_sq)

    def is_normalized(self, tol: float = INPUT_NORM_TOL) -> bool:
        return abs(self.norm_sq - 1.0) <= tol

    def as_array(self) -> np.ndarray:
        return np.array([self.c_a, self.c_b], dtype=complex)

    @classmethod
    def from_array(cls, v) -> "JonesState":
        v = np.asarray(v, dtype=complex)
        return cls(complex(v[0]), complex(v[1]))


@dataclass(frozen=True)
class StokesVector:
    """Real Stokes components (s1, s2, s3); |s| equals the squared state norm."""

    s1: float
    s2: float
    s3: float

    def __post_init__(self):
        for name in ("s1", "s2", "s3"):
            object.__setattr__(self, name, float(getattr(self, name)))
        # slack covers the squared-norm bound of a maximal JonesState
        if self.s1**2 + self.s2**2 + self.s3**2 > 1.0 + 5e-9:
            raise ValueError("Stokes vector lies outside the unit ball")

    @property
    def norm(self) -> float:
        return math.sqrt(self.s1**2 + self.s2**2 + self.s3**2)

    def as_array(self) -> np.ndarray:
        return np.array([self.s1, self.s2, self.s3])


@dataclass(frozen=True)
class EllipseAngles:
    """Polarization-ellipse angles: major-axis direction eta, ellipticity chi."""

    eta: float
    chi: float

    def __post_init__(self):
        object.__setattr__(self, "eta", float(self.eta))
        object.__setattr__(self, "chi", float(self.chi))
        if not 0.0 <= self.eta < math.pi:
            raise ValueError("eta must lie in [0, pi)")
        if abs(self.chi) > math.pi / 4 + 1e-12:
            raise ValueError("chi must lie in [-pi/4, pi/4]")


_EXP_P = cmath.exp(1j * math.pi / 4)
_EXP_M = cmath.exp(-1j * math.pi / 4)
_SQRT2 = math.sqrt(2.0)


def linear_state(zeta: float) -> JonesState:
    """Linearly polarized state [cos zeta, sin zeta] for zeta in [0, pi)."""
    if not 0.0 <= zeta < math.pi:
        raise ValueError(f"linear polarization angle {zeta!r} outside [0, pi)")
    return JonesState(math.cos(zeta), math.sin(zeta))


def named_state(name: str, zeta: float | None = None) -> JonesState:
    """Return one of the reference states H, V, L, R, D or linear(zeta).

    These are the fixed vector expressions; no relabeling for propagation
    direction is applied anywhere in this package.
    """
    key = name.strip().upper()
    if key == "H":
        return JonesState(1.0, 0.0)
    if key == "V":
        return JonesState(0.0, 1.0)
    if key == "R":
        return JonesState(_EXP_P / _SQRT2, _EXP_M / _SQRT2)
    if key == "L":
        return JonesState(_EXP_M / _SQRT2, _EXP_P / _SQRT2)
    if key == "D":
        return linear_state(math.pi / 4)
    if key == "LINEAR":
        if zeta is None:
            raise ValueError("linear state requires an angle")
        return linear_state(zeta)
    raise ValueError(f"unknown state name {name!r}")


def parse_state(token: str) -> JonesState:
    """Parse the textual state syntax used by the CLI and config files.

    Accepts ``H|V|L|R|D``, ``linear:<angle in degrees>``, and
    ``jones:<reA>,<imA>,<reB>,<imB>`` (normalized on input).
    """
    text = token.strip()
    low = text.lower()
    if low.startswith("linear:"):
        zeta_deg = float(text.split(":", 1)[1])
        return linear_state(math.radians(zeta_deg))
    if low.startswith("jones:"):
        parts = text.split(":", 1)[1].split(",")
        if len(parts) != 4:
            raise ValueError(f"jones state needs 4 components, got {len(parts)}")
        re_a, im_a, re_b, im_b = (float(p) for p in parts)
        c_a = complex(re_a, im_a)
        c_b = complex(re_b, im_b)
        n = math.sqrt(abs(c_a) ** 2 + abs(c_b) ** 2)
        if n == 0.0:
            raise ValueError("jones state must be nonzero")
        return JonesState(c_a / n, c_b / n)
    return named_state(text)


def stokes_components(c_a, c_b):
    """Stokes triple of raw complex amplitudes; works on scalars or arrays.

    Components scale with the squared norm, so sub- and super-normalized
    amplitude pairs (for example raw waveguide field samples) are fine.
    """
    cross = c_a * np.conj(c_b)
    s1 = np.abs(c_a) ** 2 - np.abs(c_b) ** 2
    s2 = 2.0 * np.real(cross)
    s3 = 2.0 * np.imag(cross)
    return s1, s2, s3


def stokes_from_jones(j: JonesState) -> StokesVector:
    s1, s2, s3 = stokes_components(j.c_a, j.c_b)
    return StokesVector(s1, s2, s3)


def ellipse_components(s1, s2, s3):
    """Ellipse angles (eta, chi) of Stokes components; scalars or arrays.

    eta is folded into [0, pi); for circular light (s1 = s2 = 0) the major
    axis is undefined and eta is conventionally 0.
    """
    eta = 0.5 * np.arctan2(s2, s1)
    eta = np.where(eta < 0.0, eta + np.pi, eta)
    chi = 0.5 * np.arctan2(s3, np.hypot(s1, s2))
    return eta, chi


def ellipse_angles(s: StokesVector) -> EllipseAngles:
    eta, chi = ellipse_components(s.s1, s.s2, s.s3)
    return EllipseAngles(float(eta), float(chi))


def fidelity(result: JonesState, target: JonesState) -> float:
    """Loss-inclusive conversion fidelity |<target|result>|^2.

    The result state is taken as-is (not renormalized), so photon loss
    lowers the fidelity.  Invariant under a global phase of either state.
    """
    if abs(target.norm_sq - 1.0) > 1e-9:
        raise ValueError("fidelity target must be normalized")
    overlap = target.c_a.conjugate() * result.c_a + target.c_b.conjugate() * result.c_b
    return min(abs(overlap) ** 2, 1.0)


def dissipation_probability(result: JonesState) -> float:
    """Photon weight lost to non-waveguide channels, 1 - ||result||^2."""
    return max(0.0, 1.0 - result.norm_sq)
