"""CSV schemas per figure id, and validated loading.

The figure id fixes the exact header of its input CSV (schema version 1 of
the polarix data files); any mismatch is a hard error listing the missing
columns.  Numeric cells parse to floats with empty fields as NaN; label
columns stay strings.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

__all__ = ["FigureSchema", "SchemaMismatchError", "Table", "SCHEMAS", "load_table"]

SCHEMA_VERSION = 1

#: columns that carry strings rather than numbers
_STRING_COLUMNS = frozenset({"conversion", "panel", "preset"})


class SchemaMismatchError(Exception):
    """Input CSV does not match the figure's expected schema."""


@dataclass(frozen=True)
class FigureSchema:
    figure_id: str
    columns: tuple          # exact header, in order
    axes: tuple             # grid coordinates
    metrics: tuple          # numeric values (may be empty fields)
    labels: tuple = ()      # block-identifying string/number columns


SCHEMAS = {
    s.figure_id: s for s in (
        FigureSchema("fig2c", ("theta", "s1", "s2", "s3", "preset"),
                     axes=("theta",), metrics=("s1", "s2", "s3")),
        FigureSchema("fig2d", ("alpha", "s1", "s2", "s3", "theta", "preset"),
                     axes=("alpha",), metrics=("s1", "s2", "s3"), labels=("theta",)),
        FigureSchema("fig3a", ("delta_ba", "x", "fidelity", "preset"),
                     axes=("delta_ba", "x"), metrics=("fidelity",)),
        FigureSchema("fig3b", ("d_lambda", "r_m", "fidelity", "preset"),
                     axes=("d_lambda", "r_m"), metrics=("fidelity",)),
        FigureSchema("fig3c", ("alpha", "theta", "fidelity", "preset"),
                     axes=("alpha", "theta"), metrics=("fidelity",)),
        FigureSchema("figS1", ("x", "y", "eta", "chi", "amplitude", "preset"),
                     axes=("x", "y"), metrics=("eta", "chi", "amplitude")),
        FigureSchema("figS2", ("theta", "eta", "preset"),
                     axes=("theta",), metrics=("eta",)),
        FigureSchema("figS3", ("delta_es", "omega", "condition", "delta_ge", "preset"),
                     axes=("delta_es",), metrics=("omega",),
                     labels=("condition", "delta_ge")),
        FigureSchema("figS4", ("delta_ba", "fidelity", "conversion", "gamma_e", "preset"),
                     axes=("delta_ba",), metrics=("fidelity",),
                     labels=("conversion", "gamma_e")),
        FigureSchema("figS5", ("x", "y", "fidelity", "conversion", "preset"),
                     axes=("x", "y"), metrics=("fidelity",), labels=("conversion",)),
        FigureSchema("figS6", ("d_lambda", "fidelity", "conversion", "gamma_e", "preset"),
                     axes=("d_lambda",), metrics=("fidelity",),
                     labels=("conversion", "gamma_e")),
        FigureSchema("figS7", ("r_m", "fidelity", "conversion", "gamma_e", "preset"),
                     axes=("r_m",), metrics=("fidelity",),
                     labels=("conversion", "gamma_e")),
        FigureSchema("figS8", ("gamma_e", "alpha", "theta", "dissipation",
                               "conversion", "panel", "preset"),
                     axes=("gamma_e", "alpha", "theta"), metrics=("dissipation",),
                     labels=("conversion", "panel")),
    )
}


@dataclass
class Table:
    """Validated CSV content: numeric arrays plus string label columns."""

    schema: FigureSchema
    numeric: dict = field(default_factory=dict)   # column -> float ndarray
    strings: dict = field(default_factory=dict)   # column -> list[str]

    def __len__(self) -> int:
        first = next(iter(self.numeric.values()), None)
        return 0 if first is None else len(first)

    def blocks(self, keys):
        """Row-index arrays grouped by the given label columns, in file order."""
        tags = list(zip(*(self.column_text(k) for k in keys))) if keys else []
        if not tags:
            yield (), np.arange(len(self))
            return
        seen = []
        for tag in tags:
            if tag not in seen:
                seen.append(tag)
        tags = np.array(["\x1f".join(t) for t in tags])
        for tag in seen:
            yield tag, np.flatnonzero(tags == "\x1f".join(tag))

    def column_text(self, name):
        if name in self.strings:
            return self.strings[name]
        return [format(v, "g") for v in self.numeric[name]]

    def grid(self, rows, axis0: str, axis1: str, metric: str):
        """Reshape a block of long-format rows onto its 2D grid."""
        a0 = self.numeric[axis0][rows]
        a1 = self.numeric[axis1][rows]
        n0 = len(np.unique(a0))
        n1 = len(np.unique(a1))
        if n0 * n1 != len(rows):
            raise SchemaMismatchError(
                f"rows do not form a full {axis0} x {axis1} grid "
                f"({len(rows)} rows vs {n0} x {n1})")
        values = self.numeric[metric][rows].reshape(n0, n1)
        return a0.reshape(n0, n1)[:, 0], a1.reshape(n0, n1)[0, :], values


def load_table(figure_id: str, path) -> Table:
    """Read and validate a CSV against the figure's schema."""
    try:
        schema = SCHEMAS[figure_id]
    except KeyError:
        raise SchemaMismatchError(
            f"unknown figure id {figure_id!r}; known: {', '.join(sorted(SCHEMAS))}"
        ) from None
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaMismatchError(f"{path}: empty file") from None
        if tuple(header) != schema.columns:
            missing = [c for c in schema.columns if c not in header]
            extra = [c for c in header if c not in schema.columns]
            raise SchemaMismatchError(
                f"{path}: header does not match the {figure_id} schema; "
                f"missing columns: {missing or 'none'}, unexpected: {extra or 'none'}, "
                f"expected order: {list(schema.columns)}")
        rows = list(reader)
    if not rows:
        raise SchemaMismatchError(f"{path}: no data rows (empty grid)")
    table = Table(schema=schema)
    for j, name in enumerate(schema.columns):
        cells = [row[j] for row in rows]
        if name in _STRING_COLUMNS:
            table.strings[name] = cells
        else:
            table.numeric[name] = np.array(
                [float(c) if c != "" else np.nan for c in cells])
    return table
