"""Command-line front end.

Subcommands: ``scatter``, ``solve``, ``drive``, ``poincare``,
``sweep <preset|custom>``, ``modes``.  All physics I/O is in Gamma_0 / a
units; angle flags accept ``deg`` and ``rad`` suffixes (bare numbers are
radians).  States use the textual syntax ``H|V|L|R|D``,
``linear:<degrees>`` or ``jones:<reA>,<imA>,<reB>,<imB>``.

Exit status: 0 success, 1 usage error, 2 infeasible or degenerate physics.
Outputs are byte-stable for identical invocations; ``--stamp`` opts into a
timestamp in the JSON metadata.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import SweepAxis, SweepSpec, evaluate_sweep
from .control import realize_drive, solve_controls
from .errors import InfeasibleDriveError, PhysicsError
from .polarization import (JonesState, dissipation_probability, ellipse_angles,
                           fidelity, parse_state, stokes_from_jones)
from .presets import POINCARE_PRESETS, SWEEP_PRESETS, build_preset
from .scattering import (DriveConfig, full_scattering, ideal_scattering_matrix,
                         scatter)
from .serialize import write_csv, write_json
from .waveguide import EmitterConfig, GeometryConfig, bz_wavelength, kz

__all__ = ["run", "main"]

THREADS_ENV = "POLARIX_THREADS"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def parse_angle(text: str) -> float:
    """Angle with optional deg/rad suffix; bare values are radians."""
    t = text.strip().lower()
    if t.endswith("deg"):
        return math.radians(float(t[:-3]))
    if t.endswith("rad"):
        return float(t[:-3])
    return float(t)


def parse_number(text: str) -> float:
    t = text.strip().lower()
    if t in ("inf", "+inf", "infinity"):
        return math.inf
    if t in ("-inf", "-infinity"):
        return -math.inf
    return float(t)


def load_config(path: str) -> dict:
    """Key = value overlay file; '#' starts a comment, keys are lowercase."""
    overlay = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise _UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        overlay[key.lower()] = value
    return overlay


_GEOMETRY_KEYS = ("a", "b", "x", "y", "d", "d_lambda", "r_m", "r_am", "r_bm", "k")


def build_geometry(cfg: dict) -> GeometryConfig:
    kwargs = {}
    for key in ("a", "b", "x", "y", "k"):
        if cfg.get(key) is not None:
            kwargs[key] = float(cfg[key])
    if cfg.get("r_m") is not None:
        # magnitude convention: the studied end mirrors are negative real
        kwargs["r_am"] = kwargs["r_bm"] = -abs(float(cfg["r_m"]))
    for key in ("r_am", "r_bm"):
        if cfg.get(key) is not None:
            kwargs[key] = complex(str(cfg[key]).replace(" ", ""))
    geom = GeometryConfig(**kwargs)
    if cfg.get("d") is not None and cfg.get("d_lambda") is not None:
        raise _UsageError("give either d or d_lambda, not both")
    if cfg.get("d") is not None:
        geom = GeometryConfig(**kwargs, d=float(cfg["d"]))
    elif cfg.get("d_lambda") is not None:
        geom = GeometryConfig(**kwargs, d=float(cfg["d_lambda"]) * bz_wavelength(geom))
    return geom


def build_emitter(cfg: dict) -> EmitterConfig:
    kwargs = {}
    if cfg.get("theta") is not None:
        kwargs["theta"] = parse_angle(str(cfg["theta"]))
    if cfg.get("gamma_e") is not None:
        kwargs["gamma_e"] = float(cfg["gamma_e"])
    return EmitterConfig(**kwargs)


def build_drive(cfg: dict) -> DriveConfig:
    triple = tuple(cfg.get(k) is not None for k in ("omega", "delta_ge", "delta_es"))
    if any(triple):
        if not all(triple):
            raise _UsageError("--omega/--delta-ge/--delta-es must be given together")
        return DriveConfig.from_drive(float(cfg["omega"]), float(cfg["delta_ge"]),
                                      float(cfg["delta_es"]))
    alpha = parse_number(str(cfg["alpha"])) if cfg.get("alpha") is not None else 0.0
    return DriveConfig.from_alpha(alpha)


def _fmt(x) -> str:
    if isinstance(x, complex):
        return f"{x.real:.12g}{x.imag:+.12g}j"
    x = float(x)
    if x == 0.0:
        x = 0.0  # never print -0
    return format(x, ".12g")


def _merged(args, keys) -> dict:
    """Flag values override config-file values; None means unset."""
    overlay = load_config(args.config) if getattr(args, "config", None) else {}
    merged = {}
    for key in keys:
        flag = getattr(args, key, None)
        merged[key] = flag if flag is not None else overlay.get(key)
    return merged


def _add_output_options(sub):
    sub.add_argument("--out", default=".", help="output directory")
    sub.add_argument("--format", choices=("csv", "json", "both"), default="both")
    sub.add_argument("--stamp", action="store_true",
                     help="include a timestamp in JSON metadata")
    sub.add_argument("--threads", type=int, default=None,
                     help=f"sweep worker cap (default ${THREADS_ENV} or 1)")


def _add_physics_options(sub):
    sub.add_argument("--config", help="key = value overlay file")
    for key in _GEOMETRY_KEYS:
        sub.add_argument(f"--{key.replace('_', '-')}", dest=key, default=None)
    sub.add_argument("--theta", default=None, help="dipole angle (deg/rad suffix)")
    sub.add_argument("--gamma-e", dest="gamma_e", default=None)
    sub.add_argument("--alpha", default=None, help="drive parameter (inf = EIT)")
    sub.add_argument("--omega", default=None, help="Rabi frequency")
    sub.add_argument("--delta-ge", dest="delta_ge", default=None)
    sub.add_argument("--delta-es", dest="delta_es", default=None)


def _threads(args) -> int:
    if getattr(args, "threads", None) is not None:
        return max(1, args.threads)
    env = os.environ.get(THREADS_ENV)
    return max(1, int(env)) if env else 1


def _emit(results, name: str, args) -> None:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.format in ("csv", "both"):
        write_csv(results, out_dir / f"{name}.csv")
        print(out_dir / f"{name}.csv")
    if args.format in ("json", "both"):
        write_json(results, out_dir / f"{name}.json", stamp=args.stamp)
        print(out_dir / f"{name}.json")


def _cmd_scatter(args) -> int:
    cfg = _merged(args, _GEOMETRY_KEYS + ("theta", "gamma_e", "alpha", "omega",
                                          "delta_ge", "delta_es", "input", "target",
                                          "model"))
    if not cfg.get("input"):
        raise _UsageError("scatter needs --input")
    state = parse_state(str(cfg["input"]))
    emitter = build_emitter(cfg)
    drive = build_drive(cfg)
    model = (cfg.get("model") or "ideal").lower()
    if model == "ideal":
        matrix = ideal_scattering_matrix(emitter, drive.alpha)
    elif model == "full":
        matrix = full_scattering(build_geometry(cfg), emitter, drive).matrix
    else:
        raise _UsageError(f"unknown model {model!r}")
    out = scatter(matrix, state)
    stokes = stokes_from_jones(out)
    angles = ellipse_angles(stokes)
    print(f"input: [{_fmt(state.c_a)}, {_fmt(state.c_b)}]")
    print(f"model: {model} theta={_fmt(emitter.theta)} rad "
          f"alpha={_fmt(drive.alpha)} gamma_e={_fmt(emitter.gamma_e)}")
    print(f"output: [{_fmt(out.c_a)}, {_fmt(out.c_b)}]")
    print(f"norm: {_fmt(out.norm)}")
    print(f"stokes: ({_fmt(stokes.s1)}, {_fmt(stokes.s2)}, {_fmt(stokes.s3)})")
    print(f"eta: {_fmt(angles.eta)} rad")
    print(f"chi: {_fmt(angles.chi)} rad")
    print(f"p_dis: {_fmt(dissipation_probability(out))}")
    if cfg.get("target"):
        target = parse_state(str(cfg["target"]))
        print(f"fidelity: {_fmt(fidelity(out, target))}")
    return 0


def _cmd_solve(args) -> int:
    cfg = _merged(args, ("input", "output", "delta_ge", "delta_es"))
    if not cfg.get("input") or not cfg.get("output"):
        raise _UsageError("solve needs --input and --output")
    branches = solve_controls(parse_state(str(cfg["input"])),
                              parse_state(str(cfg["output"])))
    for sol in branches:
        print(f"branch {sol.branch}: alpha={_fmt(sol.alpha)} "
              f"theta={_fmt(sol.theta)} rad ({_fmt(math.degrees(sol.theta))} deg) "
              f"xi_co={_fmt(sol.xi_co)} rad")
    if cfg.get("delta_ge") is not None and cfg.get("delta_es") is not None:
        delta_ge = float(cfg["delta_ge"])
        delta_es = float(cfg["delta_es"])
        failures = []
        realized = 0
        for sol in branches:
            if sol.is_identity:
                print(f"branch {sol.branch} drive: set delta_es = delta_ge; "
                      "any omega > 0 (transparent identity)")
                realized += 1
                continue
            try:
                omega, alpha_check = realize_drive(sol, delta_ge, delta_es)
            except InfeasibleDriveError as exc:
                failures.append(exc)
                print(f"branch {sol.branch} drive: infeasible ({exc})")
                continue
            realized += 1
            print(f"branch {sol.branch} drive: omega={_fmt(omega)} "
                  f"(alpha check {_fmt(alpha_check)})")
        if not realized:
            raise failures[0]
    return 0


def _cmd_drive(args) -> int:
    results = build_preset("figS3", threads=_threads(args))
    _emit(results, "figS3", args)
    return 0


def _cmd_poincare(args) -> int:
    if args.preset:
        if args.preset not in POINCARE_PRESETS:
            raise _UsageError(f"unknown poincare preset {args.preset!r}")
        results = build_preset(args.preset, threads=_threads(args))
        _emit(results, args.preset, args)
        return 0
    from .analysis import poincare_trajectory

    theta = parse_angle(args.theta) if args.theta is not None else math.pi / 4
    grid = np.linspace(parse_number(args.alpha_min), parse_number(args.alpha_max),
                       args.points)
    _emit([poincare_trajectory(theta, grid)], "poincare", args)
    return 0


def _cmd_modes(args) -> int:
    cfg = _merged(args, _GEOMETRY_KEYS + ("theta", "gamma_e"))
    from .analysis import SweepResult
    from .waveguide import cross_section_map

    geom = build_geometry(cfg)
    phase = parse_angle(args.phase_diff)
    cs = cross_section_map(geom, phase_diff=phase, grid=args.grid)
    result = SweepResult(preset="figS1", axes=(("x", cs.x), ("y", cs.y)),
                         values={"eta": cs.eta, "chi": cs.chi,
                                 "amplitude": cs.amplitude},
                         config={"a": geom.a, "b": geom.b, "phase_diff": phase,
                                 "grid": args.grid})
    _emit([result], "figS1", args)
    return 0


_METRIC_ALIASES = {"p_dis": "dissipation"}


def _custom_sweep_spec(path: str) -> SweepSpec:
    cfg = load_config(path)
    axes = []
    for key in ("axis", "axis1", "axis2"):
        if key in cfg:
            parts = [p.strip() for p in cfg[key].split(",")]
            if len(parts) != 4:
                raise _UsageError(f"{key}: expected 'name, start, stop, count'")
            axes.append(SweepAxis(parts[0], parse_number(parts[1]),
                                  parse_number(parts[2]), int(parts[3])))
    if not axes:
        raise _UsageError("custom sweep needs an 'axis = name, start, stop, count' line")
    metrics = tuple(_METRIC_ALIASES.get(m.strip(), m.strip())
                    for m in cfg.get("metrics", "fidelity").split(","))
    target = cfg.get("target")
    if target is not None and target.lower() != "ideal":
        target = parse_state(target)
    elif target is not None:
        target = "ideal"
    return SweepSpec(
        axes=tuple(axes), geometry=build_geometry(cfg), emitter=build_emitter(cfg),
        drive=build_drive(cfg),
        input_state=parse_state(cfg["input"]) if cfg.get("input") else None,
        target_state=target, metrics=metrics)


def _cmd_sweep(args) -> int:
    threads = _threads(args)
    if args.preset == "custom":
        if not args.spec:
            raise _UsageError("sweep custom needs --spec FILE")
        result = evaluate_sweep(_custom_sweep_spec(args.spec), preset="custom",
                                threads=threads)
        _emit([result], "custom", args)
        return 0
    if args.preset not in SWEEP_PRESETS:
        raise _UsageError(
            f"unknown sweep preset {args.preset!r}; choose from "
            f"{', '.join(SWEEP_PRESETS)} or custom")
    _emit(build_preset(args.preset, threads=threads), args.preset, args)
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="polarix",
                     description="atom-in-waveguide single-photon polarization "
                                 "converter toolkit")
    parser.add_argument("--version", action="version", version=f"polarix {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("scatter", help="scatter one state and report the output")
    _add_physics_options(sub)
    sub.add_argument("--input", default=None)
    sub.add_argument("--target", default=None)
    sub.add_argument("--model", default=None, choices=("ideal", "full"))
    sub.set_defaults(func=_cmd_scatter)

    sub = subs.add_parser("solve", help="inverse-design controls for a conversion")
    sub.add_argument("--config", help="key = value overlay file")
    sub.add_argument("--input", default=None)
    sub.add_argument("--output", default=None)
    sub.add_argument("--delta-ge", dest="delta_ge", default=None)
    sub.add_argument("--delta-es", dest="delta_es", default=None)
    sub.set_defaults(func=_cmd_solve)

    sub = subs.add_parser("drive", help="emit the drive-field curve families")
    _add_output_options(sub)
    sub.set_defaults(func=_cmd_drive)

    sub = subs.add_parser("poincare", help="emit Stokes trajectories")
    _add_output_options(sub)
    sub.add_argument("--preset", default=None, help="fig2c or fig2d")
    sub.add_argument("--theta", default=None)
    sub.add_argument("--alpha-min", dest="alpha_min", default="-10")
    sub.add_argument("--alpha-max", dest="alpha_max", default="10")
    sub.add_argument("--points", type=int, default=201)
    sub.set_defaults(func=_cmd_poincare)

    sub = subs.add_parser("sweep", help="run a figure preset or custom sweep")
    _add_output_options(sub)
    sub.add_argument("preset", help=f"{', '.join(SWEEP_PRESETS)} or custom")
    sub.add_argument("--spec", default=None, help="custom sweep spec file")
    sub.set_defaults(func=_cmd_sweep)

    sub = subs.add_parser("modes", help="emit the cross-section polarization map")
    _add_output_options(sub)
    _add_physics_options(sub)
    sub.add_argument("--grid", type=int, default=101)
    sub.add_argument("--phase-diff", dest="phase_diff", default="90deg")
    sub.set_defaults(func=_cmd_modes)
    return parser


def run(argv=None) -> int:
    """Parse argv and dispatch; returns the process exit status."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PhysicsError as exc:
        print(f"physics error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
