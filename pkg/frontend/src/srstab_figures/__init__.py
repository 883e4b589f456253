"""Figure rendering for the srstab CSV outputs.

Pure projection of CSV contents onto three figures: the two-cluster
resolution-limit curves, the bound-versus-empirical extremal eigenvalue
overlay, and the approximant function profiles.  No mathematics is
recomputed here; every plotted point comes from a CSV row.
"""

__version__ = "0.1.0"

from .csvdata import CsvTable, SchemaError, load_table
from .render import (
    FIGURE_INPUTS,
    FigureSpec,
    extremal_overlay_violations,
    render,
)
