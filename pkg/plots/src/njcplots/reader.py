"""Loading and validating simulator CSV results and their manifests.

The simulator writes one CSV per scenario plus a ``<stem>.manifest.json``
next to it.  Only those two files are consumed here; nothing is recomputed
from the physics.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class PlotInputError(RuntimeError):
    """Missing or malformed simulator output."""


@dataclass
class ScenarioTable:
    name: str
    path: Path
    columns: dict[str, np.ndarray]
    manifest: dict | None

    def require(self, *names: str) -> None:
        missing = [n for n in names if n not in self.columns]
        if missing:
            raise PlotInputError(
                f"{self.path}: missing expected columns {missing}; found {list(self.columns)}"
            )

    def population_columns(self) -> list[str]:
        """P_0, P_1, ... sorted by photon number, excluding analytic overlays."""
        names = [
            n for n in self.columns
            if n.startswith("P_") and not n.endswith("_analytic")
        ]
        return sorted(names, key=lambda n: int(n.split("_")[1]))

    def marker_columns(self) -> dict[str, str]:
        """Analytic overlay columns mapped to the population they shadow."""
        out = {}
        for name in self.columns:
            if name.endswith("_analytic") and name.startswith("P_"):
                out[name] = name[: -len("_analytic")]
        return out


def load_table(csv_path: str | Path) -> ScenarioTable:
    csv_path = Path(csv_path)
    if not csv_path.exists():
        raise PlotInputError(f"result file {csv_path} does not exist")
    with csv_path.open(newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise PlotInputError(f"{csv_path} is empty") from None
        rows = list(reader)
    if not rows:
        raise PlotInputError(f"{csv_path} has a header but no data rows")
    try:
        data = np.array([[float(x) for x in row] for row in rows])
    except ValueError as exc:
        raise PlotInputError(f"{csv_path} has non-numeric payload: {exc}") from exc
    if data.shape[1] != len(header):
        raise PlotInputError(f"{csv_path}: row width does not match the header")

    manifest_path = csv_path.with_name(csv_path.stem + ".manifest.json")
    manifest = None
    if manifest_path.exists():
        try:
            manifest = json.loads(manifest_path.read_text())
        except json.JSONDecodeError as exc:
            raise PlotInputError(f"{manifest_path} is not valid JSON: {exc}") from exc
    columns = {name: data[:, i] for i, name in enumerate(header)}
    return ScenarioTable(csv_path.stem, csv_path, columns, manifest)


def pulse_center(table: ScenarioTable) -> float:
    """t_center of the scenario's Gaussian pulse, from the manifest."""
    if table.manifest is None:
        raise PlotInputError(f"{table.path}: manifest required to locate the pulse center")
    try:
        return float(table.manifest["scenario"]["pulse"]["t_center"])
    except (KeyError, TypeError) as exc:
        raise PlotInputError(f"{table.path}: manifest carries no pulse center") from exc
