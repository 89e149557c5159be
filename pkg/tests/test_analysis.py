"""Sweep engines: circle geometry, figure presets, determinism."""

import math

import numpy as np
import pytest

from polarix import (CONVERSIONS, DriveConfig, EmitterConfig, GeometryConfig,
                     SweepAxis, SweepSpec, build_preset, drive_curves,
                     evaluate_sweep, fidelity_map, named_state,
                     poincare_circle, poincare_trajectory)


class TestPoincareTrajectory:
    def test_reference_points(self):
        res = poincare_trajectory(math.pi / 4, np.array([-2.0, 0.0, 2.0]))
        s = np.stack([res.values["s1"], res.values["s2"], res.values["s3"]], axis=1)
        assert s[0] == pytest.approx([0, 0, -1], abs=1e-12)
        assert s[1] == pytest.approx([-1, 0, 0], abs=1e-12)
        assert s[2] == pytest.approx([0, 0, 1], abs=1e-12)

    def test_zero_radius_at_decoupled_dipole(self):
        res = poincare_trajectory(0.0, np.linspace(-5, 5, 21))
        for name, expect in (("s1", 1.0), ("s2", 0.0), ("s3", 0.0)):
            assert res.values[name] == pytest.approx(np.full(21, expect))

    def test_equator_point(self):
        res = poincare_trajectory(math.pi / 8, np.array([0.0]))
        assert (res.values["s1"][0], res.values["s2"][0], res.values["s3"][0]) == \
            pytest.approx((0.0, 1.0, 0.0), abs=1e-12)

    def test_circle_invariant(self, rng):
        # 100 random theta x 100 random alpha each: |s - center| = radius
        for theta in rng.uniform(0.0, math.pi, 100):
            center, radius = poincare_circle(theta)
            res = poincare_trajectory(theta, rng.uniform(-50, 50, 100))
            s = np.stack([res.values["s1"], res.values["s2"], res.values["s3"]], axis=1)
            assert np.abs(np.linalg.norm(s - center, axis=1) - radius).max() < 1e-10

    def test_endpoints_approach_transparency(self):
        res = poincare_trajectory(1.0, np.array([-1e9, 1e9]))
        assert res.values["s1"] == pytest.approx([1.0, 1.0], abs=1e-12)


class TestDriveCurves:
    def test_plus_condition_at_zero_detuning(self):
        grid = np.linspace(-8.0, 2.0, 51)
        (res,) = drive_curves(2.0, [0.0], grid)
        omega = res.values["omega"]
        feasible = grid <= 0.0
        assert np.allclose(omega[feasible], 2.0 * np.sqrt(-2.0 * grid[feasible]))
        assert np.all(np.isnan(omega[~feasible]))

    def test_zero_condition_degenerate_family(self):
        (res,) = drive_curves(0.0, [0.0], np.linspace(-2, 2, 11))
        assert res.values["omega"] == pytest.approx(np.zeros(11), abs=1e-12)

    def test_minus_condition_one_sided(self):
        (res,) = drive_curves(-2.0, [2.3], np.linspace(-5, 5, 101))
        omega = res.values["omega"]
        grid = res.axis("delta_es")
        assert np.all(np.isfinite(omega[grid <= 2.3]))
        assert np.all(np.isnan(omega[grid > 2.3]))


def _small_conversion_spec(conversion, axes, gamma_e):
    input_name, target_name, alpha, theta = CONVERSIONS[conversion]
    return SweepSpec(axes=axes, geometry=GeometryConfig(),
                     emitter=EmitterConfig(theta=theta, gamma_e=gamma_e),
                     drive=DriveConfig(alpha=alpha),
                     input_state=named_state(input_name),
                     target_state=named_state(target_name))


class TestFidelityMap:
    def test_lossless_conversion_is_perfect_at_ideal_point(self):
        spec = _small_conversion_spec(
            "V->L", (SweepAxis("delta_ba", -0.05, 0.05, 21),), gamma_e=0.0)
        res = fidelity_map(spec)
        mid = res.values["fidelity"][10]
        assert mid == pytest.approx(1.0, abs=1e-12)

    def test_monotone_degradation_lossless(self):
        # the degenerate point is the strict maximum when nothing dissipates
        for conversion in CONVERSIONS:
            spec = _small_conversion_spec(
                conversion, (SweepAxis("delta_ba", -0.05, 0.05, 41),), gamma_e=0.0)
            fid = fidelity_map(spec).values["fidelity"]
            assert np.argmax(fid) == 20
            assert np.all(fid <= fid[20] + 1e-15)

    def test_transverse_map_symmetry(self):
        spec = _small_conversion_spec(
            "V->L", (SweepAxis("x", 0.3, 0.7, 21), SweepAxis("y", 0.3, 0.7, 21)),
            gamma_e=0.05)
        fid = fidelity_map(spec).values["fidelity"]
        assert np.abs(fid - fid[::-1, :]).max() < 1e-10
        assert np.abs(fid - fid[:, ::-1]).max() < 1e-10

    def test_invalid_grid_point_reported(self):
        spec = _small_conversion_spec(
            "V->L", (SweepAxis("delta_ba", -0.5, 0.0, 11),), gamma_e=0.0)
        with pytest.raises(ValueError, match="grid point"):
            fidelity_map(spec)

    def test_ideal_target_mode(self):
        spec = SweepSpec(axes=(SweepAxis("alpha", -10, 10, 41),),
                         geometry=GeometryConfig(),
                         emitter=EmitterConfig(theta=math.pi / 4, gamma_e=0.05),
                         drive=DriveConfig(alpha=0.0),
                         input_state=named_state("H"), target_state="ideal")
        fid = fidelity_map(spec).values["fidelity"]
        # transparency suppresses the loss at large |alpha|
        assert fid[0] > fid[20] and fid[-1] > fid[20]
        assert fid.max() == pytest.approx(max(fid[0], fid[-1]))

    def test_thread_count_does_not_change_bits(self):
        spec = _small_conversion_spec(
            "V->L", (SweepAxis("delta_ba", -0.05, 0.05, 30),
                     SweepAxis("x", 0.4, 0.6, 17)), gamma_e=0.05)
        one = fidelity_map(spec, threads=1).values["fidelity"]
        four = fidelity_map(spec, threads=4).values["fidelity"]
        assert np.array_equal(one, four)

    def test_identical_specs_identical_results(self):
        spec = _small_conversion_spec(
            "H->V", (SweepAxis("gamma_e", 0.0, 0.1, 11),), gamma_e=0.0)
        a = fidelity_map(spec).values["fidelity"]
        b = fidelity_map(spec).values["fidelity"]
        assert np.array_equal(a, b)


class TestSweepSpecValidation:
    def test_axis_count(self):
        with pytest.raises(ValueError):
            SweepSpec(axes=())

    def test_duplicate_axes(self):
        with pytest.raises(ValueError):
            SweepSpec(axes=(SweepAxis("x", 0, 1, 5), SweepAxis("x", 0, 1, 5)),
                      input_state=named_state("H"), target_state=named_state("V"))

    def test_unknown_parameter(self):
        with pytest.raises(ValueError):
            SweepAxis("bogus", 0, 1, 5)

    def test_min_points(self):
        with pytest.raises(ValueError):
            SweepAxis("x", 0, 1, 1)

    def test_fidelity_needs_target(self):
        with pytest.raises(ValueError):
            SweepSpec(axes=(SweepAxis("x", 0.4, 0.6, 5),),
                      input_state=named_state("H"), metrics=("fidelity",))


class TestPresets:
    def test_fig2c_series(self):
        (res,) = build_preset("fig2c")
        theta = res.axis("theta")
        assert len(theta) == 181
        assert res.values["s1"] == pytest.approx(np.cos(4 * theta), abs=1e-12)
        assert res.values["s2"] == pytest.approx(np.sin(4 * theta), abs=1e-12)
        assert res.values["s3"] == pytest.approx(np.zeros_like(theta), abs=1e-12)

    def test_fig3a_center_cell(self):
        (res,) = build_preset("fig3a")
        fid = res.values["fidelity"]
        assert fid[50, 50] == pytest.approx(0.98761669624257388, abs=1e-12)

    def test_figS4_block_structure(self):
        blocks = build_preset("figS4")
        assert len(blocks) == 9
        labels = {(b.labels["conversion"], b.labels["gamma_e"]) for b in blocks}
        assert ("V->L", 0.05) in labels and ("H->V", 0.0) in labels

    def test_figS8_panels(self):
        blocks = build_preset("figS8")
        panels = [b.labels.get("panel") for b in blocks]
        assert panels.count("a") == 3 and panels.count("b") == 1

    def test_unknown_preset(self):
        with pytest.raises(ValueError):
            build_preset("fig9z")
