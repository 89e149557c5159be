"""One preset per reproduced figure.

Each builder returns a list of :class:`~polarix.analysis.SweepResult`
blocks; multi-panel figures come back as several blocks distinguished by
label columns (conversion, gamma_e, condition, panel).  Control parameters
are pinned at their ideal-conversion values while the geometry or
dissipation parameters sweep, which is the robustness-study semantics.

The three reference conversions and their controls:

    H->V   rotation by a quarter turn      alpha = 0,          theta = pi/4
    V->L   linear to left circular         alpha = +2 Gamma_0, theta = pi/4
    R->V   right circular to linear        alpha = +2 Gamma_0, theta = pi/4

State names refer to the fixed vector expressions of
:func:`polarix.polarization.named_state`.
"""

from __future__ import annotations

import math

import numpy as np

from .analysis import (SweepAxis, SweepResult, SweepSpec, dissipation_sweep,
                       drive_curves, evaluate_sweep, fidelity_map,
                       poincare_trajectory)
from .polarization import named_state
from .scattering import DriveConfig, stokes_closed_form
from .waveguide import EmitterConfig, GeometryConfig, cross_section_map

__all__ = ["CONVERSIONS", "SWEEP_PRESETS", "POINCARE_PRESETS", "build_preset"]

#: conversion label -> (input name, target name, alpha, theta)
CONVERSIONS = {
    "H->V": ("H", "V", 0.0, math.pi / 4),
    "V->L": ("V", "L", 2.0, math.pi / 4),
    "R->V": ("R", "V", 2.0, math.pi / 4),
}

#: dissipation-study conversions (input name, alpha, theta)
_DISSIPATION_CURVES = {
    "H->R": ("H", 2.0, math.pi / 4),
    "R->H": ("R", -2.0, math.pi / 4),
    "H->V": ("H", 0.0, math.pi / 4),
}

_GAMMA_FAMILY = (0.0, 0.05, 0.1)

#: drive-condition alpha -> delta_ge families (red arrow, blue arrow)
_DRIVE_FAMILIES = {
    2.0: (-1.7, -1.0, 0.0, 1.0, -2.3, -3.0, -4.0, -5.0),
    -2.0: (2.3, 3.0, 4.0, 5.0, 1.7, 1.0, 0.0, -1.0),
    0.0: (0.3, 1.0, 2.0, 3.0, -0.3, -1.0, -2.0, -3.0),
}


def _geometry(**overrides) -> GeometryConfig:
    return GeometryConfig(**overrides)


def _conversion_spec(conversion: str, axes, gamma_e: float,
                     geometry: GeometryConfig | None = None) -> SweepSpec:
    input_name, target_name, alpha, theta = CONVERSIONS[conversion]
    return SweepSpec(
        axes=axes,
        geometry=geometry or _geometry(),
        emitter=EmitterConfig(theta=theta, gamma_e=gamma_e),
        drive=DriveConfig(alpha=alpha),
        input_state=named_state(input_name),
        target_state=named_state(target_name),
        metrics=("fidelity",))


def _fig2c(threads: int):
    theta = np.linspace(0.0, math.pi / 2, 181)
    s1, s2, s3 = stokes_closed_form(theta, 0.0)
    return [SweepResult(preset="fig2c", axes=(("theta", theta),),
                        values={"s1": s1, "s2": s2, "s3": s3},
                        config={"alpha": 0.0, "gamma_e": 0.0, "model": "ideal"})]


def _fig2d(threads: int):
    return [poincare_trajectory(math.pi / 4, np.linspace(-10.0, 10.0, 201),
                                preset="fig2d")]


def _fig3a(threads: int):
    axes = (SweepAxis("delta_ba", -0.05, 0.05, 101), SweepAxis("x", 0.3, 0.7, 101))
    spec = _conversion_spec("V->L", axes, gamma_e=0.05)
    return [fidelity_map(spec, preset="fig3a", threads=threads)]


def _fig3b(threads: int):
    axes = (SweepAxis("d_lambda", 0.70, 0.80, 101), SweepAxis("r_m", 0.95, 1.0, 101))
    spec = _conversion_spec("V->L", axes, gamma_e=0.05)
    return [fidelity_map(spec, preset="fig3b", threads=threads)]


def _fig3c(threads: int):
    axes = (SweepAxis("alpha", -10.0, 10.0, 101),
            SweepAxis("theta", 0.0, math.pi / 2, 101))
    spec = SweepSpec(axes=axes, geometry=_geometry(),
                     emitter=EmitterConfig(theta=math.pi / 4, gamma_e=0.05),
                     drive=DriveConfig(alpha=0.0),
                     input_state=named_state("H"), target_state="ideal",
                     metrics=("fidelity",))
    return [fidelity_map(spec, preset="fig3c", threads=threads)]


def _figS1(threads: int):
    geom = _geometry()
    cs = cross_section_map(geom, phase_diff=math.pi / 2, grid=101)
    return [SweepResult(
        preset="figS1", axes=(("x", cs.x), ("y", cs.y)),
        values={"eta": cs.eta, "chi": cs.chi, "amplitude": cs.amplitude},
        config={"a": geom.a, "b": geom.b, "phase_diff": math.pi / 2})]


def _figS2(threads: int):
    axes = (SweepAxis("theta", 0.0, math.pi * 180.0 / 181.0, 181),)
    spec = SweepSpec(axes=axes, geometry=_geometry(),
                     emitter=EmitterConfig(theta=0.0, gamma_e=0.0),
                     drive=DriveConfig(alpha=0.0),
                     input_state=named_state("H"), metrics=("eta",))
    return [evaluate_sweep(spec, preset="figS2", threads=threads)]


def _figS3(threads: int):
    delta_es = np.linspace(-10.0, 10.0, 201)
    blocks = []
    for condition, family in _DRIVE_FAMILIES.items():
        blocks.extend(drive_curves(condition, family, delta_es, preset="figS3"))
    return blocks


def _family_sweep(preset: str, axis: SweepAxis, threads: int,
                  gammas=_GAMMA_FAMILY):
    blocks = []
    for conversion in CONVERSIONS:
        for gamma_e in gammas:
            spec = _conversion_spec(conversion, (axis,), gamma_e=gamma_e)
            blocks.append(fidelity_map(
                spec, preset=preset,
                labels={"conversion": conversion, "gamma_e": gamma_e},
                threads=threads))
    return blocks


def _figS4(threads: int):
    return _family_sweep("figS4", SweepAxis("delta_ba", -0.05, 0.05, 101), threads)


def _figS5(threads: int):
    axes = (SweepAxis("x", 0.4, 0.6, 101), SweepAxis("y", 0.4, 0.6, 101))
    blocks = []
    for conversion in CONVERSIONS:
        spec = _conversion_spec(conversion, axes, gamma_e=0.05)
        blocks.append(fidelity_map(spec, preset="figS5",
                                   labels={"conversion": conversion},
                                   threads=threads))
    return blocks


def _figS6(threads: int):
    return _family_sweep("figS6", SweepAxis("d_lambda", 0.70, 0.80, 101), threads)


def _figS7(threads: int):
    return _family_sweep("figS7", SweepAxis("r_m", 0.95, 1.0, 101), threads)


def _figS8(threads: int):
    blocks = []
    axis = SweepAxis("gamma_e", 0.0, 0.1, 101)
    for conversion, (input_name, alpha, theta) in _DISSIPATION_CURVES.items():
        spec = SweepSpec(axes=(axis,), geometry=_geometry(),
                         emitter=EmitterConfig(theta=theta, gamma_e=0.0),
                         drive=DriveConfig(alpha=alpha),
                         input_state=named_state(input_name),
                         metrics=("dissipation",))
        blocks.append(dissipation_sweep(
            spec, preset="figS8",
            labels={"conversion": conversion, "panel": "a"}, threads=threads))
    grid_axes = (SweepAxis("alpha", -10.0, 10.0, 101),
                 SweepAxis("theta", 0.0, math.pi / 2, 101))
    spec = SweepSpec(axes=grid_axes, geometry=_geometry(),
                     emitter=EmitterConfig(theta=math.pi / 4, gamma_e=0.1),
                     drive=DriveConfig(alpha=0.0),
                     input_state=named_state("H"), metrics=("dissipation",))
    blocks.append(dissipation_sweep(spec, preset="figS8",
                                    labels={"panel": "b"}, threads=threads))
    return blocks


_BUILDERS = {
    "fig2c": _fig2c,
    "fig2d": _fig2d,
    "fig3a": _fig3a,
    "fig3b": _fig3b,
    "fig3c": _fig3c,
    "figS1": _figS1,
    "figS2": _figS2,
    "figS3": _figS3,
    "figS4": _figS4,
    "figS5": _figS5,
    "figS6": _figS6,
    "figS7": _figS7,
    "figS8": _figS8,
}

#: presets served by the `sweep` subcommand
SWEEP_PRESETS = ("fig3a", "fig3b", "fig3c", "figS2", "figS4", "figS5",
                 "figS6", "figS7", "figS8")
#: presets served by the `poincare` subcommand
POINCARE_PRESETS = ("fig2c", "fig2d")


def build_preset(name: str, threads: int = 1) -> list:
    """Build every data block of a named figure preset."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from "
                         f"{', '.join(sorted(_BUILDERS))}") from None
    return builder(threads)
