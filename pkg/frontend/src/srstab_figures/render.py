"""The three figures, rendered from CSV tables only."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .csvdata import CsvTable, SchemaError, load_table

# figure id -> required CSV kinds (any order on the command line)
FIGURE_INPUTS = {
    "resolution_limit": ("distance",),
    "extremal_values": ("empirical", "bounds"),
    "function_profiles": ("funcs",),
}

# distance and eigenvalue plots span decades; profiles are linear
_LOG_Y = {"resolution_limit": True, "extremal_values": True,
          "function_profiles": False}

# strip volatile metadata so identical inputs give identical bytes
_CLEAN_METADATA = {".pdf": {"CreationDate": None},
                   ".svg": {"Date": None}}


@dataclass
class FigureSpec:
    """One rendering request: figure id, input CSVs, output image path."""
    figure: str
    inputs: list
    output: str
    log_y: bool = field(default=None)

    def __post_init__(self):
        if self.figure not in FIGURE_INPUTS:
            raise SchemaError(f"unknown figure id {self.figure!r}")
        if self.log_y is None:
            self.log_y = _LOG_Y[self.figure]


def _classify_inputs(spec: FigureSpec) -> dict:
    required = FIGURE_INPUTS[spec.figure]
    tables = [load_table(p) for p in spec.inputs]
    by_kind = {}
    for table in tables:
        if table.kind in by_kind:
            raise SchemaError(f"duplicate {table.kind!r} input: {table.path}")
        by_kind[table.kind] = table
    if sorted(by_kind) != sorted(required):
        raise SchemaError(
            f"figure {spec.figure!r} needs {sorted(required)} CSVs, "
            f"got {sorted(by_kind)}")
    return by_kind


def _render_resolution_limit(ax, table: CsvTable, log_y: bool):
    alpha = np.asarray(table.columns["alpha"])
    n_vals = np.asarray(table.columns["N"])
    dist = np.asarray(table.columns["distance"])
    for a in sorted(set(alpha)):
        sel = alpha == a
        order = np.argsort(n_vals[sel])
        ax.plot(n_vals[sel][order], dist[sel][order], marker="o",
                label=rf"$\alpha = {a:g}$")
    if log_y:
        ax.set_yscale("log")
    ax.set_xlabel(r"$N$")
    ax.set_ylabel(r"$\Vert x_1 - x_2 \Vert_2$")
    ax.legend()


def _render_extremal_values(ax, empirical: CsvTable, bounds: CsvTable,
                            log_y: bool):
    grid = np.asarray(bounds.columns["alpha"])
    order = np.argsort(grid)
    ax.plot(grid[order], np.asarray(bounds.columns["h_minus"])[order],
            color="tab:blue", label=r"$h_-(\alpha)$")
    ax.plot(grid[order], np.asarray(bounds.columns["h_plus"])[order],
            color="tab:red", label=r"$h_+(\alpha)$")
    alpha = np.asarray(empirical.columns["alpha"])
    ax.scatter(alpha, empirical.columns["lambda_min"], s=12, marker=".",
               color="tab:cyan", label=r"$\lambda_{\min}(J)$ trials")
    ax.scatter(alpha, empirical.columns["lambda_max"], s=12, marker=".",
               color="tab:orange", label=r"$\lambda_{\max}(J)$ trials")
    if log_y:
        ax.set_yscale("log")
    ax.set_xlabel(r"$\alpha = N\,\Delta(\tau)$")
    ax.set_ylabel(r"eigenvalues of $J(\theta)$")
    ax.legend()


def _render_function_profiles(fig, table: CsvTable, log_y: bool):
    alpha = np.asarray(table.columns["alpha"])
    t = np.asarray(table.columns["t"])
    panels = sorted(set(alpha))
    axes = fig.subplots(1, len(panels), sharey=True)
    if len(panels) == 1:
        axes = [axes]
    for ax, a in zip(axes, panels):
        sel = alpha == a
        order = np.argsort(t[sel])
        ts = t[sel][order]
        ax.plot(ts, np.asarray(table.columns["g_minus"])[sel][order],
                color="tab:blue", label=r"$G_\alpha^-$")
        ax.plot(ts, np.asarray(table.columns["g_plus"])[sel][order],
                color="tab:red", label=r"$G_\alpha^+$")
        ax.plot(ts, np.asarray(table.columns["box"])[sel][order],
                color="black", linestyle="--", label=r"$I_\alpha$")
        ax.set_xlabel(r"$t$")
        ax.set_title(rf"$\alpha = {a:g}$")
    axes[0].legend()


def render(spec: FigureSpec):
    """Render the requested figure and write it to spec.output.

    Vector formats come out of the file extension (.pdf/.svg); use .png
    for a raster.  Returns the matplotlib figure for inspection.
    """
    by_kind = _classify_inputs(spec)
    if spec.figure == "function_profiles":
        n_panels = len(set(by_kind["funcs"].columns["alpha"]))
        fig = plt.figure(figsize=(3.2 * max(n_panels, 1), 3.0))
        _render_function_profiles(fig, by_kind["funcs"], spec.log_y)
    else:
        fig = plt.figure(figsize=(6.4, 4.0))
        ax = fig.add_subplot(1, 1, 1)
        if spec.figure == "resolution_limit":
            _render_resolution_limit(ax, by_kind["distance"], spec.log_y)
        else:
            _render_extremal_values(ax, by_kind["empirical"],
                                    by_kind["bounds"], spec.log_y)
    fig.tight_layout()
    suffix = Path(spec.output).suffix.lower()
    fig.savefig(spec.output, metadata=_CLEAN_METADATA.get(suffix))
    return fig


def extremal_overlay_violations(empirical: CsvTable, bounds: CsvTable,
                                alpha_min: float = 3.54) -> list:
    """Trial rows at alpha >= alpha_min whose extremes escape [h_-, h_+].

    The check reads exactly the data the overlay plots; an empty list
    means every scatter point lies between the two curves.
    """
    if empirical.kind != "empirical" or bounds.kind != "bounds":
        raise SchemaError("overlay check needs an empirical and a bounds table")
    curve = {}
    for a, hm, hp in zip(bounds.columns["alpha"], bounds.columns["h_minus"],
                         bounds.columns["h_plus"]):
        curve[a] = (hm, hp)
    violations = []
    cols = empirical.columns
    for i, a in enumerate(cols["alpha"]):
        if a < alpha_min:
            continue
        match = next((key for key in curve if abs(key - a) <= 1e-9), None)
        if match is None:
            raise SchemaError(f"no bounds row at alpha={a!r}")
        hm, hp = curve[match]
        if not (hm <= cols["lambda_min"][i] and cols["lambda_max"][i] <= hp):
            violations.append({"row": i, "alpha": a,
                               "lambda_min": cols["lambda_min"][i],
                               "lambda_max": cols["lambda_max"][i],
                               "h_minus": hm, "h_plus": hp})
    return violations
