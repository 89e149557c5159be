"""Jones/Stokes algebra: conventions, examples and invariants."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polarix import (EllipseAngles, JonesState, StokesVector,
                     dissipation_probability, ellipse_angles, fidelity,
                     ideal_scattering_matrix, linear_state, named_state,
                     parse_state, scatter, stokes_from_jones)
from polarix.waveguide import EmitterConfig

from conftest import haar_state

EXP_P = cmath.exp(1j * math.pi / 4)
EXP_M = cmath.exp(-1j * math.pi / 4)
SQ2 = math.sqrt(2.0)


amplitude = st.floats(-1.0, 1.0, allow_nan=False)


@st.composite
def jones_states(draw):
    re_a, im_a, re_b, im_b = (draw(amplitude) for _ in range(4))
    c_a, c_b = complex(re_a, im_a), complex(re_b, im_b)
    n = math.sqrt(abs(c_a) ** 2 + abs(c_b) ** 2)
    if n < 1e-3:
        c_a, n = 1.0 + 0j, 1.0
    return JonesState(c_a / n, c_b / n)


class TestNamedStates:
    def test_basis_states(self):
        assert named_state("H").as_array() == pytest.approx([1, 0])
        assert named_state("V").as_array() == pytest.approx([0, 1])

    def test_circular_vectors(self):
        r = named_state("R")
        assert r.c_a == pytest.approx(EXP_P / SQ2)
        assert r.c_b == pytest.approx(EXP_M / SQ2)
        l = named_state("L")
        assert l.c_a == pytest.approx(EXP_M / SQ2)
        assert l.c_b == pytest.approx(EXP_P / SQ2)

    def test_diagonal_is_linear_quarter_turn(self):
        assert named_state("D").as_array() == pytest.approx([1 / SQ2, 1 / SQ2])
        assert linear_state(math.pi / 4).as_array() == pytest.approx([1 / SQ2, 1 / SQ2])

    def test_unknown_name_rejected(self):
        with pytest.raises(ValueError):
            named_state("Q")

    def test_linear_angle_range(self):
        with pytest.raises(ValueError):
            linear_state(math.pi)
        with pytest.raises(ValueError):
            linear_state(-0.1)

    def test_parse_state_tokens(self):
        assert parse_state("L") == named_state("L")
        assert parse_state("linear:45").as_array() == pytest.approx([1 / SQ2, 1 / SQ2])
        j = parse_state("jones:1,0,1,0")
        assert j.as_array() == pytest.approx([1 / SQ2, 1 / SQ2])
        with pytest.raises(ValueError):
            parse_state("jones:0,0,0,0")
        with pytest.raises(ValueError):
            parse_state("circular")


class TestJonesState:
    def test_rejects_amplified_states(self):
        with pytest.raises(ValueError):
            JonesState(1.0, 0.1)

    def test_output_states_may_be_lossy(self):
        j = JonesState(0.5, 0.5)
        assert j.norm_sq == pytest.approx(0.5)
        assert not j.is_normalized()


class TestStokes:
    def test_basis_state(self):
        assert stokes_from_jones(named_state("H")).as_array() == pytest.approx([1, 0, 0])

    def test_right_circular_is_north_pole(self):
        s = stokes_from_jones(named_state("R"))
        assert s.as_array() == pytest.approx([0, 0, 1])

    def test_left_circular_is_south_pole(self):
        s = stokes_from_jones(named_state("L"))
        assert s.as_array() == pytest.approx([0, 0, -1])

    def test_diagonal_linear(self):
        s = stokes_from_jones(JonesState(1 / SQ2, 1 / SQ2))
        assert s.as_array() == pytest.approx([0, 1, 0])

    @settings(max_examples=200, derandomize=True)
    @given(jones_states())
    def test_unit_norm_for_normalized_states(self, j):
        assert abs(stokes_from_jones(j).norm - 1.0) < 1e-9

    def test_ball_invariant_enforced(self):
        with pytest.raises(ValueError):
            StokesVector(1.0, 1.0, 0.0)


class TestEllipseAngles:
    def test_horizontal(self):
        a = ellipse_angles(StokesVector(1, 0, 0))
        assert (a.eta, a.chi) == (0.0, 0.0)

    def test_diagonal(self):
        a = ellipse_angles(StokesVector(0, 1, 0))
        assert a.eta == pytest.approx(math.pi / 4)
        assert a.chi == 0.0

    def test_circular_limit_convention(self):
        # chi = atan2(s3, in-plane norm)/2 -> pi/4 as the in-plane norm -> 0,
        # eta conventionally 0 for circular light
        a = ellipse_angles(StokesVector(0, 0, 1))
        assert a.eta == 0.0
        assert a.chi == pytest.approx(math.pi / 4)

    @pytest.mark.parametrize("zeta", np.linspace(0.0, math.pi, 37, endpoint=False))
    def test_linear_states_roundtrip(self, zeta):
        a = ellipse_angles(stokes_from_jones(linear_state(zeta)))
        assert a.eta == pytest.approx(zeta, abs=1e-10)
        assert a.chi == pytest.approx(0.0, abs=1e-10)

    def test_angle_ranges_enforced(self):
        with pytest.raises(ValueError):
            EllipseAngles(-0.1, 0.0)
        with pytest.raises(ValueError):
            EllipseAngles(0.0, 1.0)


class TestFidelity:
    def test_identical_states(self):
        assert fidelity(named_state("L"), named_state("L")) == pytest.approx(1.0)

    def test_orthogonal_states(self):
        assert fidelity(named_state("H"), named_state("V")) == 0.0
        assert fidelity(named_state("R"), named_state("L")) == pytest.approx(0.0, abs=1e-15)

    def test_lossy_circular_conversion(self):
        # frozen by independent high-precision evaluation of the closed form
        em = EmitterConfig(theta=math.pi / 4, gamma_e=0.05)
        out = scatter(ideal_scattering_matrix(em, 2.0), named_state("V"))
        assert fidelity(out, named_state("L")) == pytest.approx(
            0.98761669624257388, abs=1e-12)

    def test_requires_normalized_target(self):
        with pytest.raises(ValueError):
            fidelity(named_state("H"), JonesState(0.5, 0.5))

    @settings(max_examples=100, derandomize=True)
    @given(jones_states(), jones_states(),
           st.floats(-math.pi, math.pi, allow_nan=False))
    def test_global_phase_invariance(self, result, target, phase):
        rot = cmath.exp(1j * phase)
        rotated = JonesState(result.c_a * rot, result.c_b * rot)
        assert fidelity(rotated, target) == pytest.approx(
            fidelity(result, target), abs=1e-12)


class TestDissipation:
    def test_unit_norm_state(self):
        assert dissipation_probability(named_state("D")) == 0.0

    def test_lossy_scattering(self, rng):
        # |den|^2 = 8.2025, surviving weight 8.0025 at gamma_e = 0.1
        em = EmitterConfig(theta=math.pi / 4, gamma_e=0.1)
        out = scatter(ideal_scattering_matrix(em, 2.0), named_state("H"))
        assert dissipation_probability(out) == pytest.approx(
            0.024382810118866199, abs=1e-12)

    def test_unitary_output(self):
        em = EmitterConfig(theta=0.3, gamma_e=0.0)
        out = scatter(ideal_scattering_matrix(em, 1.3), named_state("H"))
        assert dissipation_probability(out) == pytest.approx(0.0, abs=1e-12)
