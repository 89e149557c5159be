"""Inverse design: control parameters for an arbitrary polarization conversion.

Given any normalized input and target state, the lossless scattering
equation has exactly two closed-form solution branches (alpha, theta),
related by alpha -> -alpha and theta -> theta +- pi/2, plus the global
output phase xi_co that the conversion imprints.

Parameterization: each state is first rotated by a global phase so its
mode-B component is real and non-negative (states with no B component use
phase 0 by convention); the solution formulas act on the resulting
(magnitude_a, phase_a, magnitude_b) triples.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import IllConditionedConversionError
from .polarization import JonesState
from .scattering import alpha_of_drive, drive_for_alpha

__all__ = [
    "ControlSolution",
    "solve_controls",
    "realize_drive",
    "rotation_angle",
    "canonical_components",
]

#: common-denominator threshold below which the closed form is 0/0
DEGENERATE_TOL = 1e-9


@dataclass(frozen=True)
class ControlSolution:
    """One branch of the inverse solution: drive alpha, dipole angle, phase."""

    alpha: float
    theta: float
    xi_co: float
    branch: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "xi_co", float(self.xi_co))
        if self.branch not in (1, 2):
            raise ValueError("branch must be 1 or 2")
        if not 0.0 <= self.theta < math.pi:
            raise ValueError("theta must lie in [0, pi)")

    @property
    def is_identity(self) -> bool:
        return math.isinf(self.alpha)


def canonical_components(state: JonesState):
    """(magnitude_a, phase_a, magnitude_b) after fixing the global phase.

    The state is rotated so the B component is real >= 0; a vanishing
    component pins its phase to 0.
    """
    c_a, c_b = state.c_a, state.c_b
    if abs(c_b) == 0.0:
        return abs(c_a), 0.0, 0.0
    c_a *= cmath.exp(-1j * cmath.phase(c_b))
    mag_a = abs(c_a)
    phase_a = cmath.phase(c_a) if mag_a > 0.0 else 0.0
    return mag_a, phase_a, abs(c_b)


def _wrap_theta(two_theta: float) -> float:
    theta = 0.5 * two_theta
    if theta < 0.0:
        theta += math.pi
    if theta >= math.pi:
        theta -= math.pi
    return theta


def _wrap_phase(phi: float) -> float:
    if phi >= math.pi:
        phi -= 2.0 * math.pi
    return phi


def solve_controls(input_state: JonesState, target: JonesState):
    """Both control branches converting ``input_state`` into ``target``.

    Returns a (branch-1, branch-2) pair.  When the closed form degenerates
    because input and target agree up to a global phase, the transparent
    identity solution (alpha infinite) is returned for both branches; a
    degenerate denominator for a genuinely different target raises
    IllConditionedConversionError.
    """
    for name, state in (("input", input_state), ("target", target)):
        if not state.is_normalized(1e-9):
            raise ValueError(f"{name} state must be normalized")
    i_a, xi_i, i_b = canonical_components(input_state)
    o_a, xi_o, o_b = canonical_components(target)

    num_sin = i_a * i_a - o_a * o_a
    num_cos = -i_a * i_b * math.cos(xi_i) + o_a * o_b * math.cos(xi_o)
    num_alpha = i_a * i_b * math.sin(xi_i) + o_a * o_b * math.sin(xi_o)
    denom = math.hypot(num_sin, num_cos)

    if denom < DEGENERATE_TOL:
        overlap = abs(target.c_a.conjugate() * input_state.c_a
                      + target.c_b.conjugate() * input_state.c_b)
        if abs(overlap - 1.0) <= 1e-9:
            identity = dict(alpha=math.inf, theta=0.0, xi_co=0.0)
            return (ControlSolution(branch=1, **identity),
                    ControlSolution(branch=2, **identity))
        raise IllConditionedConversionError(
            "closed-form solution is 0/0 for this conversion although the "
            "states differ; perturb the target infinitesimally and retry")

    alpha1 = 2.0 * num_alpha / denom
    theta1 = _wrap_theta(math.atan2(num_sin, num_cos))
    xi1 = cmath.phase(
        (-i_a * o_b * cmath.exp(1j * xi_i) + i_b * o_a * cmath.exp(-1j * xi_o))
        / (denom - 1j * num_alpha))
    theta2 = _wrap_theta(math.atan2(-num_sin, -num_cos))
    xi2 = cmath.phase(
        (i_a * o_b * cmath.exp(1j * xi_i) - i_b * o_a * cmath.exp(-1j * xi_o))
        / (denom + 1j * num_alpha))
    return (ControlSolution(alpha=alpha1, theta=theta1, xi_co=_wrap_phase(xi1), branch=1),
            ControlSolution(alpha=-alpha1, theta=theta2, xi_co=_wrap_phase(xi2), branch=2))


def realize_drive(sol: ControlSolution, delta_ge: float, delta_es: float):
    """External-field realization (omega_rabi, alpha_check) of a solution.

    For the transparent identity the prescription is delta_es = delta_ge
    with any positive drive; a conventional omega of 2 Gamma_0 is returned.
    Propagates InfeasibleDriveError from the sign condition.
    """
    if sol.is_identity:
        return 2.0, math.inf
    omega = drive_for_alpha(sol.alpha, delta_ge, delta_es)
    return omega, alpha_of_drive(omega, delta_ge, delta_es)


def rotation_angle(theta: float, zeta: float) -> float:
    """Output polarization direction 2 theta - zeta folded into [0, pi)."""
    if not 0.0 <= theta < math.pi:
        raise ValueError("theta must lie in [0, pi)")
    if not 0.0 <= zeta < math.pi:
        raise ValueError("zeta must lie in [0, pi)")
    u = 2.0 * theta - zeta  # always within (-pi, 2 pi) for valid angles
    if u < 0.0:
        return u + math.pi
    if u >= math.pi:
        return u - math.pi
    return u
