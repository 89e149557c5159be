"""polarix-figures: schema-validated rendering of polarix sweep CSV files.

A pure presentation layer: it parses the documented CSV schemas, refuses
anything that does not match, and draws the study-figure layouts (line
plots, heatmaps, the Poincare-sphere trajectory).  No physics is
recomputed here.
"""

from .render import FigureJob, RenderReport, render
from .schema import SCHEMAS, FigureSchema, SchemaMismatchError, Table, load_table

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "FigureJob", "RenderReport", "render",
    "FigureSchema", "SchemaMismatchError", "Table", "SCHEMAS", "load_table",
]
