"""Deterministic CSV and JSON emission of sweep results.

CSV is long format: one row per grid point, columns = axis values, metric
values, label columns, then the ``preset`` tag.  Dots for decimals, commas
as separators, LF line endings, 17 significant digits; NaN metrics (for
example infeasible drive points) become empty fields.  Schemas are
documented per preset in docs/schemas.md and versioned by SCHEMA_VERSION.
"""

from __future__ import annotations

import json
import math
import time
from itertools import product

import numpy as np

__all__ = ["SCHEMA_VERSION", "write_csv", "write_json", "result_rows"]

SCHEMA_VERSION = 1


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    value = float(value)
    if math.isnan(value):
        return ""
    return format(value, ".17g")


def _columns(results):
    axis_cols, metric_cols, label_cols = [], [], []
    for res in results:
        for name, _ in res.axes:
            if name not in axis_cols:
                axis_cols.append(name)
        for name in res.values:
            if name not in metric_cols:
                metric_cols.append(name)
        for name in res.labels:
            if name not in label_cols:
                label_cols.append(name)
    return axis_cols, metric_cols, label_cols


def result_rows(results):
    """(header, row iterator) over every grid point of every block."""
    axis_cols, metric_cols, label_cols = _columns(results)
    header = axis_cols + metric_cols + label_cols + ["preset"]

    def rows():
        for res in results:
            names = [name for name, _ in res.axes]
            grids = [grid for _, grid in res.axes]
            for idx in product(*(range(len(g)) for g in grids)):
                point = dict(zip(names, (g[i] for g, i in zip(grids, idx))))
                for metric, values in res.values.items():
                    point[metric] = values[idx]
                point.update(res.labels)
                point["preset"] = res.preset
                yield [_fmt(point[c]) if c in point else "" for c in header]

    return header, rows()


def write_csv(results, path) -> None:
    header, rows = result_rows(results)
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _jsonable(value):
    if isinstance(value, np.ndarray):
        out = value.tolist()
        return _jsonable(out)
    if isinstance(value, list):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, float) and math.isnan(value):
        return None
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value


def write_json(results, path, stamp: bool = False) -> None:
    """JSON document embedding the fully resolved configuration per block."""
    doc = {
        "schema_version": SCHEMA_VERSION,
        "preset": results[0].preset if results else None,
        "blocks": [
            {
                "labels": _jsonable(res.labels),
                "config": _jsonable(res.config),
                "axes": {name: _jsonable(grid) for name, grid in res.axes},
                "values": {name: _jsonable(grid) for name, grid in res.values.items()},
            }
            for res in results
        ],
    }
    if stamp:
        doc["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    with open(path, "w", encoding="ascii") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True, allow_nan=False)
        fh.write("\n")
