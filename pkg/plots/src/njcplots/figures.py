"""Multi-panel figures from simulator CSV output.

Three presets mirror the shipped scenario groups: ``fig2`` (2x2 rotation
panels with analytic overlay markers), ``fig3`` (pulse time series on the
left, steady-state sweeps on a log coupling axis on the right) and ``fig4``
(2x2 normalized absorption spectra with the bare-cavity reference).

Rendering never touches the simulator; everything is read from the CSV
files and manifests.  All inputs are loaded and checked before the first
artist is drawn, so a malformed CSV never leaves a partial image behind.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .reader import PlotInputError, ScenarioTable, load_table, pulse_center

MARKER_STRIDE = 25
MARKERS = ("o", "s", "^", "d")

FIG2_PANELS = ("fig2a", "fig2b", "fig2c", "fig2d")
FIG3_LEFT = ("fig3a", "fig3b", "fig3c")
FIG3_RIGHT = ("fig3d", "fig3e", "fig3f")
FIG4_PANELS = ("fig4a", "fig4b", "fig4c", "fig4d")


def _tables(in_dir: Path, names) -> dict[str, ScenarioTable]:
    return {name: load_table(in_dir / f"{name}.csv") for name in names}


def _plot_populations(ax, x, table: ScenarioTable, max_curves: int | None = None):
    names = table.population_columns()
    if max_curves is not None:
        names = names[:max_curves]
    for i, name in enumerate(names):
        ax.plot(x, table.columns[name], color=f"C{i}", lw=1.4, label=name.replace("_", "").lower())


def _overlay_markers(ax, x, table: ScenarioTable):
    for i, (analytic, base) in enumerate(sorted(table.marker_columns().items())):
        color_index = table.population_columns().index(base) if base in table.population_columns() else i
        ax.plot(
            x[::MARKER_STRIDE],
            table.columns[analytic][::MARKER_STRIDE],
            linestyle="None",
            marker=MARKERS[i % len(MARKERS)],
            markerfacecolor="none",
            markersize=4,
            color=f"C{color_index}",
            label=analytic.replace("_analytic", " (two-level form)").replace("_", ""),
        )


def build_fig2(in_dir: Path):
    tables = _tables(in_dir, FIG2_PANELS)
    for table in tables.values():
        table.require("t", "P_0", "F_analytic", "P_0_analytic")
    fig, axes = plt.subplots(2, 2, figsize=(9, 6.5), constrained_layout=True)
    for ax, name in zip(axes.flat, FIG2_PANELS):
        table = tables[name]
        t = table.columns["t"]
        _plot_populations(ax, t, table)
        _overlay_markers(ax, t, table)
        ax.set_xlabel(r"$\kappa t$")
        ax.set_ylabel(r"$P_k$")
        ax.set_ylim(-0.02, 1.02)
        ax.set_title(name)
        ax.legend(fontsize=7, ncol=2)
    return fig


def build_fig3(in_dir: Path):
    left = _tables(in_dir, FIG3_LEFT)
    right = _tables(in_dir, FIG3_RIGHT)
    for table in left.values():
        table.require("t", "P_0", "n_mean", "leakage")
    for table in right.values():
        table.require("g", "P_0", "leakage")
    fig, axes = plt.subplots(3, 2, figsize=(9, 8.5), constrained_layout=True)
    for row, (lname, rname) in enumerate(zip(FIG3_LEFT, FIG3_RIGHT)):
        ltab, rtab = left[lname], right[rname]
        ax = axes[row, 0]
        t0 = pulse_center(ltab)
        _plot_populations(ax, ltab.columns["t"] - t0, ltab, max_curves=5)
        ax.set_xlabel(r"$\kappa (t - t_0)$")
        ax.set_ylabel(r"$P_k$")
        ax.set_title(lname)
        ax.legend(fontsize=7, ncol=2)

        ax = axes[row, 1]
        _plot_populations(ax, rtab.columns["g"], rtab)
        ax.set_xscale("log")
        ax.set_xlabel(r"$g / \kappa$")
        ax.set_ylabel(r"$P_k$ (steady state)")
        ax.set_title(rname)
        ax.legend(fontsize=7, ncol=2)
    return fig


def build_fig4(in_dir: Path):
    names = [f"{panel}-{suffix}" for panel in FIG4_PANELS for suffix in ("lowdiss", "highdiss")]
    tables = _tables(in_dir, names)
    for table in tables.values():
        table.require("delta_p", "absorption", "absorption_g0")
    fig, axes = plt.subplots(2, 2, figsize=(9, 6.5), constrained_layout=True)
    for ax, panel in zip(axes.flat, FIG4_PANELS):
        low = tables[f"{panel}-lowdiss"]
        high = tables[f"{panel}-highdiss"]
        delta = low.columns["delta_p"]
        ax.plot(delta, low.columns["absorption_g0"], "k-.", lw=1.2, label="bare cavity")
        ax.plot(delta, low.columns["absorption"], "b-", lw=1.4, label="quiet atom")
        ax.plot(high.columns["delta_p"], high.columns["absorption"], "r--", lw=1.4, label="noisy atom")
        ax.set_xlabel(r"$\Delta_p / \kappa$")
        ax.set_ylabel(r"$\langle a^\dagger a\rangle$ (normalized)")
        ax.set_ylim(-0.02, 1.05)
        ax.set_title(panel)
        ax.legend(fontsize=7)
    return fig


BUILDERS = {"fig2": build_fig2, "fig3": build_fig3, "fig4": build_fig4}


def render_preset(preset: str, in_dir: str | Path, out_dir: str | Path) -> Path:
    """Render one figure preset; returns the written image path."""
    if preset not in BUILDERS:
        raise PlotInputError(f"unknown figure preset {preset!r}; expected one of {sorted(BUILDERS)}")
    in_dir = Path(in_dir)
    out_dir = Path(out_dir)
    fig = BUILDERS[preset](in_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    out_path = out_dir / f"{preset}.png"
    try:
        fig.savefig(out_path, dpi=150)
    finally:
        plt.close(fig)
    return out_path
