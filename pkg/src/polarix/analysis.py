"""Deterministic sweep engines behind every reproduced study.

A sweep evaluates the full scattering model (or the lossless closed form)
over a grid of one or two named parameters and collects scalar metrics.
Grid points are independent; when evaluated with several workers each
thread fills a disjoint row block of preallocated arrays, so results are
bitwise identical for any worker count.

Sweepable parameter names:

== =============================================================
delta_ba   height difference b - a; the emitter keeps its fractional
           transverse position (y/b, x/a) while b changes
x, y       absolute emitter position in units of a
d          emitter-mirror separation in units of a
d_lambda   the same separation in units of the guided B wavelength
r_m        mirror reflectivity magnitude, applied as r = -|r_m| to both
           modes (the studied mirrors are near-perfect metallic ends)
gamma_e    emitter dissipation rate
alpha      drive parameter
theta      dipole angle
== =============================================================
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .polarization import JonesState, ellipse_components, stokes_components
from .scattering import DriveConfig, matrix_elements_grid, stokes_closed_form
from .waveguide import EmitterConfig, GeometryConfig, bz_wavelength, kz

__all__ = [
    "SweepAxis",
    "SweepSpec",
    "SweepResult",
    "evaluate_sweep",
    "fidelity_map",
    "dissipation_sweep",
    "poincare_trajectory",
    "poincare_circle",
    "drive_curves",
]

SWEEPABLE = ("delta_ba", "x", "y", "d", "d_lambda", "r_m", "gamma_e", "alpha", "theta")
METRICS = ("fidelity", "dissipation", "s1", "s2", "s3", "eta", "chi")


@dataclass(frozen=True)
class SweepAxis:
    name: str
    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.name not in SWEEPABLE:
            raise ValueError(f"unknown sweep parameter {self.name!r}")
        if self.count < 2:
            raise ValueError("each axis needs at least 2 points")

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepSpec:
    """One- or two-parameter sweep around a fixed base configuration.

    ``target_state`` may be a JonesState, None (no fidelity metric), or the
    string "ideal", which compares each grid point against the lossless
    closed-form output for that point's (theta, alpha).
    """

    axes: tuple
    geometry: GeometryConfig = field(default_factory=GeometryConfig)
    emitter: EmitterConfig = field(default_factory=EmitterConfig)
    drive: DriveConfig = field(default_factory=lambda: DriveConfig(alpha=0.0))
    input_state: JonesState | None = None
    target_state: object = None
    metrics: tuple = ("fidelity",)

    def __post_init__(self):
        axes = tuple(self.axes)
        object.__setattr__(self, "axes", axes)
        if not 1 <= len(axes) <= 2:
            raise ValueError("a sweep has one or two axes")
        names = [ax.name for ax in axes]
        if len(set(names)) != len(names):
            raise ValueError("swept parameters must be distinct")
        object.__setattr__(self, "metrics", tuple(self.metrics))
        for m in self.metrics:
            if m not in METRICS:
                raise ValueError(f"unknown metric {m!r}")
        needs_input = set(self.metrics) & {"fidelity", "dissipation", "s1", "s2",
                                           "s3", "eta", "chi"}
        if needs_input and self.input_state is None:
            raise ValueError("these metrics need an input state")
        if "fidelity" in self.metrics and self.target_state is None:
            raise ValueError("the fidelity metric needs a target state")


@dataclass(frozen=True)
class SweepResult:
    """Labeled value grids over the swept axes, plus the resolved config."""

    preset: str
    axes: tuple                # ((name, 1d-array), ...)
    values: dict               # metric name -> grid array
    labels: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)

    def __post_init__(self):
        shape = tuple(len(g) for _, g in self.axes)
        for name, grid in self.values.items():
            if grid.shape != shape:
                raise ValueError(f"metric {name!r} grid shape {grid.shape} "
                                 f"does not match axes {shape}")

    def axis(self, name: str) -> np.ndarray:
        for ax_name, grid in self.axes:
            if ax_name == name:
                return grid
        raise KeyError(name)


def _resolved_params(spec: SweepSpec, mesh: dict):
    """Per-point physical parameters after applying the swept values."""
    geom = spec.geometry
    b = mesh.get("delta_ba")
    b = geom.b if b is None else geom.a + b
    # emitter rides at a fixed fraction of the cross-section while b sweeps
    y = mesh.get("y", geom.y / geom.b * b)
    x = mesh.get("x", geom.x)
    if "d_lambda" in mesh:
        d = mesh["d_lambda"] * bz_wavelength(geom)
    else:
        d = mesh.get("d", geom.d)
    if "r_m" in mesh:
        r_am = -mesh["r_m"].astype(complex)
        r_bm = r_am
    else:
        r_am, r_bm = geom.r_am, geom.r_bm
    return dict(
        b=np.asarray(b, dtype=float), x=np.asarray(x, dtype=float),
        y=np.asarray(y, dtype=float), d=np.asarray(d, dtype=float),
        r_am=r_am, r_bm=r_bm,
        gamma_e=np.asarray(mesh.get("gamma_e", spec.emitter.gamma_e), dtype=float),
        theta=np.asarray(mesh.get("theta", spec.emitter.theta), dtype=float),
        alpha=np.asarray(mesh.get("alpha", spec.drive.alpha), dtype=float))


def _validate_geometry(spec: SweepSpec, p: dict, shape: tuple):
    geom = spec.geometry
    bad = ((p["b"] <= 0) | (p["x"] < 0) | (p["x"] > geom.a)
           | (p["y"] < 0) | (p["y"] > p["b"]) | (p["d"] <= 0)
           | (geom.k <= np.maximum(1.0, geom.a / p["b"])))
    bad = np.broadcast_to(bad, shape)
    if np.any(bad):
        idx = tuple(int(i) for i in np.argwhere(bad)[0])
        coords = {name: float(np.broadcast_to(p[name], shape)[idx])
                  for name in ("b", "x", "y", "d")}
        raise ValueError(f"invalid geometry at grid point {idx}: {coords}")


def _full_matrix_arrays(spec: SweepSpec, p: dict):
    geom = spec.geometry
    k_a = np.sqrt(geom.k**2 - (geom.a / p["b"]) ** 2)
    k_b = float(kz(geom.k, geom.a, geom.a))
    g0 = math.sqrt(spec.emitter.gamma0)
    v_a = -g0 * np.sin(np.pi * p["y"] / p["b"]) * np.cos(p["theta"])
    v_b = -g0 * np.sin(np.pi * p["x"] / geom.a) * np.sin(p["theta"])
    r_aa, r_ab, r_ba, r_bb, _ = matrix_elements_grid(
        k_a=k_a, k_b=k_b, d=p["d"], v_a=v_a, v_b=v_b,
        alpha=p["alpha"], gamma_e=p["gamma_e"], r_am=p["r_am"], r_bm=p["r_bm"])
    return r_aa, r_ab, r_ba, r_bb


def _ideal_matrix_arrays(theta, alpha, gamma0: float):
    den = 2.0 * gamma0 - 1j * alpha
    c2 = np.cos(2.0 * theta)
    s2 = np.sin(2.0 * theta)
    r_aa = (-2.0 * gamma0 * c2 - 1j * alpha) / den
    r_bb = (2.0 * gamma0 * c2 - 1j * alpha) / den
    off = -2.0 * gamma0 * s2 / den
    return r_aa, off, off, r_bb


def _chunks(n: int, workers: int):
    size = max(1, -(-n // workers))
    return [(i, min(i + size, n)) for i in range(0, n, size)]


def evaluate_sweep(spec: SweepSpec, preset: str = "custom", labels: dict | None = None,
                   threads: int = 1) -> SweepResult:
    """Run a sweep and collect the requested metrics on the grid."""
    grids = [ax.grid() for ax in spec.axes]
    shape = tuple(len(g) for g in grids)
    if len(grids) == 1:
        mesh_axes = [grids[0]]
    else:
        mesh_axes = np.meshgrid(*grids, indexing="ij")
    mesh = {ax.name: m for ax, m in zip(spec.axes, mesh_axes)}
    params = _resolved_params(spec, mesh)
    _validate_geometry(spec, params, shape)

    out = {m: np.empty(shape) for m in spec.metrics}
    in_a, in_b = (spec.input_state.c_a, spec.input_state.c_b) \
        if spec.input_state is not None else (0j, 0j)

    def fill(lo: int, hi: int):
        p = {k: (v[lo:hi] if isinstance(v, np.ndarray) and v.shape[:1] == shape[:1]
                 else v) for k, v in params.items()}
        r_aa, r_ab, r_ba, r_bb = _full_matrix_arrays(spec, p)
        out_a = r_aa * in_a + r_ab * in_b
        out_b = r_ba * in_a + r_bb * in_b
        for m in spec.metrics:
            if m == "fidelity":
                if spec.target_state == "ideal":
                    i_aa, i_ab, i_ba, i_bb = _ideal_matrix_arrays(
                        p["theta"], p["alpha"], spec.emitter.gamma0)
                    t_a = i_aa * in_a + i_ab * in_b
                    t_b = i_ba * in_a + i_bb * in_b
                else:
                    t_a, t_b = spec.target_state.c_a, spec.target_state.c_b
                val = np.abs(np.conj(t_a) * out_a + np.conj(t_b) * out_b) ** 2
            elif m == "dissipation":
                val = np.maximum(0.0, 1.0 - (np.abs(out_a) ** 2 + np.abs(out_b) ** 2))
            else:
                s1, s2, s3 = stokes_components(out_a, out_b)
                if m in ("eta", "chi"):
                    eta, chi = ellipse_components(s1, s2, s3)
                    val = eta if m == "eta" else chi
                else:
                    val = {"s1": s1, "s2": s2, "s3": s3}[m]
            out[m][lo:hi] = np.broadcast_to(val, (hi - lo,) + shape[1:])

    workers = max(1, int(threads))
    if workers == 1 or shape[0] < 2 * workers:
        fill(0, shape[0])
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for future in [pool.submit(fill, lo, hi) for lo, hi in _chunks(shape[0], workers)]:
                future.result()

    for m, grid in out.items():
        if not np.all(np.isfinite(grid)):
            idx = tuple(int(i) for i in np.argwhere(~np.isfinite(grid))[0])
            raise ValueError(f"metric {m!r} is not finite at grid point {idx}")
    return SweepResult(preset=preset, axes=tuple((ax.name, g) for ax, g in zip(spec.axes, grids)),
                       values=out, labels=dict(labels or {}), config=describe_spec(spec))


def fidelity_map(spec: SweepSpec, preset: str = "custom", labels: dict | None = None,
                 threads: int = 1) -> SweepResult:
    """Conversion fidelity of the full model over the sweep grid."""
    if "fidelity" not in spec.metrics:
        spec = replace(spec, metrics=("fidelity",))
    return evaluate_sweep(spec, preset=preset, labels=labels, threads=threads)


def dissipation_sweep(spec: SweepSpec, preset: str = "custom", labels: dict | None = None,
                      threads: int = 1) -> SweepResult:
    """Photon dissipation probability of the full model over the grid."""
    if "dissipation" not in spec.metrics:
        spec = replace(spec, metrics=("dissipation",))
    return evaluate_sweep(spec, preset=preset, labels=labels, threads=threads)


def poincare_trajectory(theta: float, alpha_grid, gamma0: float = 1.0,
                        preset: str = "poincare") -> SweepResult:
    """Lossless output Stokes triple along an alpha sweep at fixed theta.

    Every point lies on the circle returned by :func:`poincare_circle`.
    """
    alpha_grid = np.asarray(alpha_grid, dtype=float)
    s1, s2, s3 = stokes_closed_form(theta, alpha_grid, gamma0)
    return SweepResult(
        preset=preset, axes=(("alpha", alpha_grid),),
        values={"s1": s1, "s2": s2, "s3": s3}, labels={"theta": float(theta)},
        config={"theta": float(theta), "gamma_e": 0.0, "model": "ideal"})


def poincare_circle(theta: float):
    """(center, radius) of the Poincare-sphere circle traced by alpha."""
    center = np.array([0.5 * math.cos(4.0 * theta) + 0.5,
                       0.5 * math.sin(4.0 * theta), 0.0])
    return center, abs(math.sin(2.0 * theta))


def drive_curves(alpha_condition: float, delta_ge_list, delta_es_grid,
                 preset: str = "drive") -> list:
    """Rabi-frequency curves omega(delta_es) per delta_ge for one condition.

    Infeasible points (negative product under the root) come back as NaN,
    which the CSV writer emits as empty fields: missing data, not failure.
    """
    delta_es_grid = np.asarray(delta_es_grid, dtype=float)
    results = []
    for delta_ge in delta_ge_list:
        product = (delta_ge - delta_es_grid) * (delta_ge + alpha_condition)
        omega = np.where(product >= 0.0, 2.0 * np.sqrt(np.abs(product)), np.nan)
        results.append(SweepResult(
            preset=preset, axes=(("delta_es", delta_es_grid),),
            values={"omega": omega},
            labels={"condition": float(alpha_condition), "delta_ge": float(delta_ge)},
            config={"alpha_condition": float(alpha_condition),
                    "delta_ge": float(delta_ge)}))
    return results


def describe_spec(spec: SweepSpec) -> dict:
    """JSON-ready echo of a fully resolved sweep specification."""
    def state(s):
        if s is None or isinstance(s, str):
            return s
        return [s.c_a.real, s.c_a.imag, s.c_b.real, s.c_b.imag]

    geom = spec.geometry
    return {
        "axes": [{"name": ax.name, "start": ax.start, "stop": ax.stop,
                  "count": ax.count} for ax in spec.axes],
        "geometry": {"a": geom.a, "b": geom.b, "x": geom.x, "y": geom.y,
                     "d": geom.d, "k": geom.k,
                     "r_am": [geom.r_am.real, geom.r_am.imag],
                     "r_bm": [geom.r_bm.real, geom.r_bm.imag]},
        "emitter": {"theta": spec.emitter.theta, "gamma_e": spec.emitter.gamma_e,
                    "gamma0": spec.emitter.gamma0},
        "drive": {"alpha": spec.drive.alpha, "omega_rabi": spec.drive.omega_rabi,
                  "delta_ge": spec.drive.delta_ge, "delta_es": spec.drive.delta_es},
        "input_state": state(spec.input_state),
        "target_state": state(spec.target_state),
        "metrics": list(spec.metrics),
    }
