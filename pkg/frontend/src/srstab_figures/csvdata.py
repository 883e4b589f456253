"""Loading and validating the delimited outputs and their manifests."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

SCHEMAS = {
    "bounds": ["alpha", "h_minus", "h_plus"],
    "empirical": ["trial", "seed", "alpha", "N", "r", "lambda_min",
                  "lambda_max", "sigma_min_sq", "sigma_max_sq"],
    "distance": ["alpha", "N", "r", "distance"],
    "funcs": ["alpha", "t", "g_minus", "g_plus", "box"],
}

_INT_COLUMNS = {"trial", "seed", "N", "r"}


class SchemaError(ValueError):
    """CSV header, manifest, or figure input set does not match."""


@dataclass
class CsvTable:
    path: Path
    kind: str
    columns: dict
    manifest: dict

    def __len__(self):
        return len(next(iter(self.columns.values()), []))


def load_table(path) -> CsvTable:
    """Read one CSV with its manifest sidecar and classify it by header."""
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file")
        kind = next((k for k, cols in SCHEMAS.items() if cols == header), None)
        if kind is None:
            raise SchemaError(f"{path}: unrecognized header {','.join(header)!r}")
        raw = list(reader)
    manifest_path = path.with_suffix(".manifest.json")
    if not manifest_path.exists():
        raise SchemaError(f"{path}: missing manifest {manifest_path.name}")
    manifest = json.loads(manifest_path.read_text())
    if manifest.get("subcommand") != kind:
        raise SchemaError(
            f"{path}: manifest written by {manifest.get('subcommand')!r}, "
            f"header says {kind!r}")
    columns = {}
    for i, name in enumerate(header):
        cast = int if name in _INT_COLUMNS else float
        columns[name] = [cast(row[i]) for row in raw]
    return CsvTable(path=path, kind=kind, columns=columns, manifest=manifest)
