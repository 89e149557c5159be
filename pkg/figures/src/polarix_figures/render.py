"""Render polarix CSV data files into the study-figure layouts.

Pure presentation: the renderer never recomputes physics, it draws exactly
the numbers in the validated CSV.  Each figure id has a fixed layout (line
plots, heatmaps, the Poincare-sphere trajectory); axis labels and ranges
follow the corresponding study captions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .schema import SCHEMAS, SchemaMismatchError, Table, load_table

__all__ = ["FigureJob", "RenderReport", "render"]

_SERIES_COLORS = ("#c23b22", "#2e8b57", "#1f4e9c", "#b8860b", "#6a3d9a",
                  "#ff7f00", "#386cb0", "#a65628")


@dataclass(frozen=True)
class FigureJob:
    """One rendering task: a figure id, its input CSV and the output image."""

    figure_id: str
    input_csv: str
    output_path: str
    colormap: str = "viridis"
    dpi: int = 150
    deterministic: bool = False

    def __post_init__(self):
        if self.figure_id not in SCHEMAS:
            raise SchemaMismatchError(
                f"unknown figure id {self.figure_id!r}; known: "
                f"{', '.join(sorted(SCHEMAS))}")


@dataclass
class RenderReport:
    """What was drawn: series name -> (x, y) arrays, plus heatmap names."""

    figure_id: str
    series: dict = field(default_factory=dict)
    heatmaps: list = field(default_factory=list)


def _line_panel(ax, report, table: Table, rows, xcol, ycol, name, color, label=None):
    x = table.numeric[xcol][rows]
    y = table.numeric[ycol][rows]
    ax.plot(x, y, color=color, lw=1.4, label=label or name)
    report.series[name] = (x, y)


def _heat_panel(fig, ax, report, table: Table, rows, xcol, ycol, vcol, job,
                name, vlim=None):
    a0, a1, values = table.grid(rows, xcol, ycol, vcol)
    mesh = ax.pcolormesh(a0, a1, values.T, cmap=job.colormap, shading="nearest",
                         vmin=None if vlim is None else vlim[0],
                         vmax=None if vlim is None else vlim[1])
    fig.colorbar(mesh, ax=ax, shrink=0.85)
    report.heatmaps.append(name)
    return values


def _render_fig2c(job, table, fig, report):
    ax = fig.subplots()
    for name, color in zip(("s1", "s2", "s3"), _SERIES_COLORS):
        _line_panel(ax, report, table, np.arange(len(table)), "theta", name,
                    name, color)
    ax.set_xlabel("dipole angle theta (rad)")
    ax.set_ylabel("Stokes parameters (alpha = 0)")
    ax.set_ylim(-1.05, 1.05)
    ax.legend()


def _render_fig2d(job, table, fig, report):
    ax = fig.add_subplot(1, 2, 1)
    ax3 = fig.add_subplot(1, 2, 2, projection="3d")
    rows = np.arange(len(table))
    for name, color in zip(("s1", "s2", "s3"), _SERIES_COLORS):
        _line_panel(ax, report, table, rows, "alpha", name, name, color)
    ax.set_xlabel("drive parameter alpha")
    ax.set_ylabel("Stokes parameters (theta = pi/4)")
    ax.set_ylim(-1.05, 1.05)
    ax.legend(loc="lower right")
    # wireframe sphere with the equator and the s1-s3 great circle marked
    u = np.linspace(0.0, 2.0 * np.pi, 25)
    v = np.linspace(0.0, np.pi, 13)
    ax3.plot_wireframe(np.outer(np.cos(u), np.sin(v)),
                       np.outer(np.sin(u), np.sin(v)),
                       np.outer(np.ones_like(u), np.cos(v)),
                       color="0.85", lw=0.4)
    ring = np.linspace(0.0, 2.0 * np.pi, 181)
    ax3.plot(np.cos(ring), np.sin(ring), np.zeros_like(ring), color="0.4", lw=1.0)
    ax3.plot(np.cos(ring), np.zeros_like(ring), np.sin(ring), color="0.4", lw=1.0)
    s = [table.numeric[k][rows] for k in ("s1", "s2", "s3")]
    ax3.plot(*s, color="#c9a227", lw=2.0)
    report.series["trajectory"] = (s[0], s[2])
    ax3.set_xlabel("s1")
    ax3.set_ylabel("s2")
    ax3.set_zlabel("s3")
    ax3.set_box_aspect((1, 1, 1))


_HEATMAP_LABELS = {
    "fig3a": ("height mismatch delta_ba (a)", "emitter position x (a)",
              "fidelity |V> -> |L>"),
    "fig3b": ("separation d (lambda_Bz)", "mirror reflectivity |r_M|",
              "fidelity |V> -> |L>"),
    "fig3c": ("drive parameter alpha", "dipole angle theta (rad)",
              "fidelity vs lossless output"),
}


def _render_heatmap(job, table, fig, report):
    ax = fig.subplots()
    schema = table.schema
    xcol, ycol = schema.axes
    xlabel, ylabel, title = _HEATMAP_LABELS[job.figure_id]
    _heat_panel(fig, ax, report, table, np.arange(len(table)), xcol, ycol,
                schema.metrics[0], job, job.figure_id)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)


def _render_figS1(job, table, fig, report):
    axes = fig.subplots(1, 2)
    rows = np.arange(len(table))
    chi = _heat_panel(fig, axes[0], report, table, rows, "x", "y", "chi", job,
                      "chi", vlim=(-np.pi / 4, np.pi / 4))
    axes[0].set_title("ellipticity chi (rad)")
    _heat_panel(fig, axes[1], report, table, rows, "x", "y", "amplitude", job,
                "amplitude")
    axes[1].set_title("field amplitude")
    for ax in axes:
        ax.set_xlabel("x (a)")
        ax.set_ylabel("y (a)")
        ax.set_aspect("equal")
    return chi


def _render_figS2(job, table, fig, report):
    ax = fig.subplots()
    _line_panel(ax, report, table, np.arange(len(table)), "theta", "eta",
                "eta", _SERIES_COLORS[0])
    ax.set_xlabel("dipole angle theta (rad)")
    ax.set_ylabel("output polarization direction eta (rad)")


def _render_figS3(job, table, fig, report):
    conditions = []
    for tag, _ in table.blocks(("condition",)):
        if tag[0] not in conditions:
            conditions.append(tag[0])
    axes = np.atleast_1d(fig.subplots(1, len(conditions)))
    panel = dict(zip(conditions, axes))
    members = list(table.blocks(("condition", "delta_ge")))
    for condition in conditions:
        family = [(tag, rows) for tag, rows in members if tag[0] == condition]
        for i, ((_, delta_ge), rows) in enumerate(family):
            _line_panel(panel[condition], report, table, rows, "delta_es", "omega",
                        f"alpha={condition}, delta_ge={delta_ge}",
                        _SERIES_COLORS[i % len(_SERIES_COLORS)],
                        label=f"delta_ge={delta_ge}")
        panel[condition].set_title(f"condition alpha = {condition}")
        panel[condition].set_xlabel("control detuning delta_es")
        panel[condition].set_ylabel("Rabi frequency omega")
        panel[condition].legend(fontsize=6)


def _render_family_lines(job, table, fig, report):
    schema = table.schema
    xcol = schema.axes[0]
    metric = schema.metrics[0]
    conversions = []
    for tag, _ in table.blocks(("conversion",)):
        conversions.append(tag[0])
    axes = np.atleast_1d(fig.subplots(1, len(conversions)))
    panel = dict(zip(conversions, axes))
    for (conversion, gamma_e), rows in table.blocks(("conversion", "gamma_e")):
        i = len([s for s in report.series if s.startswith(conversion)])
        _line_panel(panel[conversion], report, table, rows, xcol, metric,
                    f"{conversion} gamma_e={gamma_e}",
                    _SERIES_COLORS[i % len(_SERIES_COLORS)],
                    label=f"gamma_e={gamma_e}")
    for conversion, ax in panel.items():
        ax.set_title(conversion)
        ax.set_xlabel(xcol)
        ax.set_ylabel(metric)
        ax.legend(fontsize=7)


def _render_figS5(job, table, fig, report):
    conversions = [tag[0] for tag, _ in table.blocks(("conversion",))]
    axes = np.atleast_1d(fig.subplots(1, len(conversions)))
    for ax, conversion in zip(axes, conversions):
        rows = [r for tag, r in table.blocks(("conversion",)) if tag[0] == conversion][0]
        _heat_panel(fig, ax, report, table, rows, "x", "y", "fidelity", job,
                    conversion)
        ax.set_title(conversion)
        ax.set_xlabel("x (a)")
        ax.set_ylabel("y (b)")
        ax.set_aspect("equal")


def _render_figS8(job, table, fig, report):
    axes = fig.subplots(1, 2)
    curve_rows = [(tag, rows) for tag, rows in table.blocks(("panel", "conversion"))
                  if tag[0] == "a"]
    for i, ((_, conversion), rows) in enumerate(curve_rows):
        _line_panel(axes[0], report, table, rows, "gamma_e", "dissipation",
                    f"{conversion}", _SERIES_COLORS[i], label=conversion)
    axes[0].set_xlabel("dissipation rate gamma_e")
    axes[0].set_ylabel("dissipation probability")
    axes[0].legend()
    grid_rows = [rows for tag, rows in table.blocks(("panel",)) if tag[0] == "b"][0]
    _heat_panel(fig, axes[1], report, table, grid_rows, "alpha", "theta",
                "dissipation", job, "grid")
    axes[1].set_xlabel("drive parameter alpha")
    axes[1].set_ylabel("dipole angle theta (rad)")
    axes[1].set_title("dissipation at gamma_e = 0.1")


_RENDERERS = {
    "fig2c": (_render_fig2c, (7.0, 4.5)),
    "fig2d": (_render_fig2d, (10.0, 4.5)),
    "fig3a": (_render_heatmap, (6.0, 4.8)),
    "fig3b": (_render_heatmap, (6.0, 4.8)),
    "fig3c": (_render_heatmap, (6.0, 4.8)),
    "figS1": (_render_figS1, (10.0, 4.5)),
    "figS2": (_render_figS2, (6.0, 4.2)),
    "figS3": (_render_figS3, (12.0, 4.0)),
    "figS4": (_render_family_lines, (12.0, 4.0)),
    "figS5": (_render_figS5, (13.0, 4.2)),
    "figS6": (_render_family_lines, (12.0, 4.0)),
    "figS7": (_render_family_lines, (12.0, 4.0)),
    "figS8": (_render_figS8, (10.0, 4.2)),
}


def render(job: FigureJob) -> RenderReport:
    """Validate the input CSV and write the rendered image.

    Returns a report of the drawn series/heatmaps so callers can check
    content without parsing the image.  Raises SchemaMismatchError for a
    wrong header, unknown figure id or an empty grid.
    """
    table = load_table(job.figure_id, job.input_csv)
    renderer, size = _RENDERERS[job.figure_id]
    report = RenderReport(figure_id=job.figure_id)
    fig = plt.figure(figsize=size)
    try:
        renderer(job, table, fig, report)
        fig.tight_layout()
        metadata = {"Software": "polarix-figures"} if job.deterministic else None
        fig.savefig(job.output_path, dpi=job.dpi, metadata=metadata)
    finally:
        plt.close(fig)
    return report
