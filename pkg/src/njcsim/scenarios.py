"""Scenario runner: declarative configs, presets, CSV results and manifests.

A scenario is one YAML file describing one run (time evolution, steady-state
sweep or absorption scan) and produces one CSV plus a JSON manifest written
atomically next to it.  All rates are in units of kappa and times in
1/kappa.  CSV payloads are deterministic for a given config: floats are
emitted with 12 significant digits and timestamps live only in the manifest.

CSV schemas by scenario kind (first column is the sweep variable):

  rotation             t, P_0..P_N, F_analytic, P_0_analytic, P_M_analytic
  filter_pulse         t, P_0..P_k, n_mean, leakage
  filter_steady_sweep  g, P_0..P_k, n_mean, leakage
  absorption_scan      delta_p, absorption, absorption_g0, n_mean
  custom               t, P_0..P_k, n_mean, leakage [, F_analytic]

where k is ``emit_k_max`` and leakage is the total population outside the
scissor subspace {|0>, ..., |N-1>}.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any

import numpy as np
import yaml

from . import __version__
from .algebra import DensityMatrix, HilbertDims, fock_probabilities
from .errors import ConfigError
from .lindblad import (
    CUTOFF_CAP,
    TAIL_LIMIT,
    TrajectoryResult,
    evolve_ground_auto,
    steady_state_auto,
)
from .model import ConstantPulse, GaussianPulse, ModelParams, PulseEnvelope
from .protocols import (
    RotationSpec,
    SpectrumScan,
    absorption_scan,
    default_scan_drive,
    filter_leakage,
    rotation_angle,
    rotation_fidelity,
)

KINDS = ("rotation", "filter_pulse", "filter_steady_sweep", "absorption_scan", "custom")
_TOP_KEYS = {
    "kind", "name", "output", "params", "pulse", "time_grid", "g_grid",
    "delta_grid", "fock_cutoff", "emit_k_max", "eps0",
}
_PARAM_KEYS = {"N", "M", "g", "delta_p", "chi", "kappa", "gamma", "gamma_phi"}


@dataclass(eq=False)
class ScenarioConfig:
    kind: str
    name: str
    output: str
    params: ModelParams
    pulse: PulseEnvelope | None
    time_grid: np.ndarray | None
    g_grid: np.ndarray | None
    delta_grid: np.ndarray | None
    fock_cutoff: int
    emit_k_max: int
    eps0: float | None
    raw: dict


@dataclass(eq=False)
class SweepResult:
    """States and cutoffs of a steady-state sweep, kept for diagnostics."""

    values: np.ndarray
    states: list[DensityMatrix]
    cutoffs: list[int]


@dataclass(eq=False)
class RunOutcome:
    name: str
    csv_path: Path
    manifest_path: Path
    manifest: dict
    data: Any


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def _default_cutoff(kind: str, n_jc: int) -> int:
    if kind == "filter_pulse":
        return max(12, n_jc + 8)
    return n_jc + 6


def _default_emit_k(kind: str, n_jc: int) -> int:
    if kind == "rotation":
        return n_jc
    if kind == "filter_steady_sweep":
        return n_jc + 2
    return 5


def validate_config_dict(raw: dict) -> list[str]:
    """Structural diagnostics for a raw config dict; empty list means runnable."""
    bad: list[str] = []
    if not isinstance(raw, dict):
        return ["config must be a mapping"]
    kind = raw.get("kind")
    if kind not in KINDS:
        bad.append(f"unknown scenario kind {kind!r}; expected one of {KINDS}")
        return bad
    for key in raw:
        if key not in _TOP_KEYS:
            bad.append(f"unknown config key {key!r}")
    if not isinstance(raw.get("name"), str) or not raw.get("name"):
        bad.append("config needs a non-empty string 'name'")
    output = raw.get("output", (raw.get("name") or "result") + ".csv")
    if not isinstance(output, str) or not output:
        bad.append("'output' must be a non-empty string")

    params = raw.get("params")
    n_jc = m_drive = None
    if not isinstance(params, dict):
        bad.append("config needs a 'params' mapping")
        params = {}
    for key in params:
        if key not in _PARAM_KEYS:
            bad.append(f"unknown params key {key!r}")
    for key in ("N", "M"):
        v = params.get(key)
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            bad.append(f"params.{key} must be an integer >= 1")
    if not bad or isinstance(params.get("N"), int):
        n_jc = params.get("N") if isinstance(params.get("N"), int) else None
        m_drive = params.get("M") if isinstance(params.get("M"), int) else None
    if not _is_number(params.get("g")) or params.get("g", -1) < 0:
        bad.append("params.g must be a number >= 0")
    for key, lo in (("kappa", 0.0), ("gamma", 0.0), ("gamma_phi", 0.0)):
        v = params.get(key, 1.0 if key == "kappa" else 0.0)
        if not _is_number(v) or v < lo:
            bad.append(f"params.{key} must be a number >= {lo}")
    for key in ("delta_p", "chi"):
        v = params.get(key, 0.0)
        if not _is_number(v):
            bad.append(f"params.{key} must be a number")

    pulse = raw.get("pulse")
    needs_pulse = kind in ("rotation", "filter_pulse", "filter_steady_sweep", "custom")
    if needs_pulse:
        if not isinstance(pulse, dict):
            bad.append("config needs a 'pulse' mapping")
        else:
            pk = pulse.get("kind")
            if pk == "constant":
                if not _is_number(pulse.get("eps0")) or pulse.get("eps0", -1) < 0:
                    bad.append("pulse.eps0 must be a number >= 0")
            elif pk == "gaussian":
                if not _is_number(pulse.get("eps_max")) or pulse.get("eps_max", -1) < 0:
                    bad.append("pulse.eps_max must be a number >= 0")
                if not _is_number(pulse.get("duration")) or pulse.get("duration", 0) <= 0:
                    bad.append("pulse.duration must be a number > 0")
                if not _is_number(pulse.get("t_center")) or pulse.get("t_center", -1) < 0:
                    bad.append("pulse.t_center must be a number >= 0")
            else:
                bad.append(f"unknown pulse kind {pulse.get('kind')!r}")
            if kind == "filter_steady_sweep" and pulse.get("kind") != "constant":
                bad.append("steady-state sweeps require a constant pulse")

    def check_grid(key: str, fields: tuple[str, ...]) -> dict | None:
        grid = raw.get(key)
        if not isinstance(grid, dict):
            bad.append(f"scenario kind {kind!r} needs a '{key}' mapping")
            return None
        for f in fields:
            if f == "log":
                continue
            if not _is_number(grid.get(f)):
                bad.append(f"{key}.{f} must be a number")
                return None
        pts = grid.get("points")
        if not isinstance(pts, int) or isinstance(pts, bool) or pts < 2:
            bad.append(f"{key}.points must be an integer >= 2")
            return None
        return grid

    if kind in ("rotation", "filter_pulse", "custom"):
        grid = check_grid("time_grid", ("t_max", "points"))
        if grid and grid["t_max"] <= 0:
            bad.append("time_grid.t_max must be > 0")
    elif kind == "filter_steady_sweep":
        grid = check_grid("g_grid", ("start", "stop", "points"))
        if grid:
            if grid["start"] >= grid["stop"]:
                bad.append("g_grid must be increasing (start < stop)")
            if grid.get("log", True) and grid["start"] <= 0:
                bad.append("log g_grid needs start > 0")
    elif kind == "absorption_scan":
        grid = check_grid("delta_grid", ("start", "stop", "points"))
        if grid and grid["start"] >= grid["stop"]:
            bad.append("delta_grid must be increasing (start < stop)")

    if kind == "rotation" and isinstance(n_jc, int) and isinstance(m_drive, int):
        if m_drive >= n_jc:
            bad.append("rotation scenarios require drive nonlinearity M < N")
        elif m_drive < n_jc / 2.0:
            bad.append("the closed-form rotation oracle requires N/2 <= M")
    if kind == "absorption_scan" and isinstance(n_jc, int) and isinstance(m_drive, int):
        if m_drive != n_jc:
            bad.append("absorption scans require drive nonlinearity M = N")
        eps0 = raw.get("eps0")
        if eps0 is not None and (not _is_number(eps0) or eps0 <= 0):
            bad.append("eps0 must be a number > 0")
        if eps0 is None and _is_number(params.get("g")) and params.get("g") <= 0:
            bad.append("absorption scans need g > 0 or an explicit eps0")
    if kind in ("filter_steady_sweep", "absorption_scan"):
        if _is_number(params.get("kappa", 1.0)) and params.get("kappa", 1.0) <= 0:
            bad.append("steady-state scenarios require kappa > 0")

    if isinstance(n_jc, int):
        cutoff = raw.get("fock_cutoff", _default_cutoff(kind, n_jc))
        if not isinstance(cutoff, int) or isinstance(cutoff, bool):
            bad.append("fock_cutoff must be an integer")
        else:
            if cutoff < n_jc + 2:
                bad.append(f"Fock cutoff {cutoff} below N+2 = {n_jc + 2}")
            if isinstance(m_drive, int) and cutoff <= m_drive:
                bad.append(f"Fock cutoff {cutoff} must exceed M = {m_drive}")
            emit = raw.get("emit_k_max", _default_emit_k(kind, n_jc))
            if not isinstance(emit, int) or isinstance(emit, bool) or emit < 0:
                bad.append("emit_k_max must be an integer >= 0")
            elif emit >= cutoff:
                bad.append(f"emit_k_max {emit} must stay below the Fock cutoff {cutoff}")
    return bad


def config_from_dict(raw: dict) -> ScenarioConfig:
    """Typed config from a raw dict; raises ConfigError listing all violations."""
    bad = validate_config_dict(raw)
    if bad:
        raise ConfigError("; ".join(bad))
    kind = raw["kind"]
    p = raw["params"]
    params = ModelParams(
        N=p["N"],
        M=p["M"],
        g=float(p["g"]),
        delta_p=float(p.get("delta_p", 0.0)),
        chi=float(p.get("chi", 0.0)),
        kappa=float(p.get("kappa", 1.0)),
        gamma=float(p.get("gamma", 0.0)),
        gamma_phi=float(p.get("gamma_phi", 0.0)),
    )
    pulse: PulseEnvelope | None = None
    if "pulse" in raw and isinstance(raw.get("pulse"), dict):
        pd = raw["pulse"]
        if pd["kind"] == "constant":
            pulse = ConstantPulse(eps0=float(pd["eps0"]))
        else:
            pulse = GaussianPulse(
                eps_max=float(pd["eps_max"]),
                duration=float(pd["duration"]),
                t_center=float(pd["t_center"]),
            )

    time_grid = g_grid = delta_grid = None
    if kind in ("rotation", "filter_pulse", "custom"):
        tg = raw["time_grid"]
        time_grid = np.linspace(0.0, float(tg["t_max"]), int(tg["points"]))
    elif kind == "filter_steady_sweep":
        gg = raw["g_grid"]
        if gg.get("log", True):
            g_grid = np.logspace(math.log10(gg["start"]), math.log10(gg["stop"]), int(gg["points"]))
        else:
            g_grid = np.linspace(float(gg["start"]), float(gg["stop"]), int(gg["points"]))
    elif kind == "absorption_scan":
        dg = raw["delta_grid"]
        delta_grid = np.linspace(float(dg["start"]), float(dg["stop"]), int(dg["points"]))

    cutoff = int(raw.get("fock_cutoff", _default_cutoff(kind, params.N)))
    emit = int(raw.get("emit_k_max", _default_emit_k(kind, params.N)))
    emit = min(emit, cutoff - 1)
    return ScenarioConfig(
        kind=kind,
        name=raw["name"],
        output=raw.get("output", raw["name"] + ".csv"),
        params=params,
        pulse=pulse,
        time_grid=time_grid,
        g_grid=g_grid,
        delta_grid=delta_grid,
        fock_cutoff=cutoff,
        emit_k_max=emit,
        eps0=float(raw["eps0"]) if raw.get("eps0") is not None else None,
        raw=raw,
    )


def load_config(path: str | Path) -> ScenarioConfig:
    path = Path(path)
    try:
        raw = yaml.safe_load(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"config {path} is not valid YAML: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config {path} must contain a mapping")
    raw.setdefault("name", path.stem)
    return config_from_dict(raw)


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _atomic_write(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_csv(path: Path, header: list[str], columns: list[np.ndarray]) -> None:
    rows = len(columns[0])
    for col in columns:
        if len(col) != rows:
            raise ValueError("CSV columns have mismatched lengths")
    lines = [",".join(header)]
    for i in range(rows):
        lines.append(",".join(_fmt(col[i]) for col in columns))
    _atomic_write(path, "\n".join(lines) + "\n")


def _run_time_evolution(cfg: ScenarioConfig) -> tuple[list[str], list[np.ndarray], TrajectoryResult, dict]:
    traj = evolve_ground_auto(
        cfg.params, cfg.pulse, cfg.time_grid, fock_cutoff=cfg.fock_cutoff
    )
    probs = traj.observables["fock_probabilities"]
    header = ["t"] + [f"P_{k}" for k in range(cfg.emit_k_max + 1)]
    columns = [traj.times] + [probs[:, k] for k in range(cfg.emit_k_max + 1)]
    extra = {
        "fock_cutoff_used": traj.dims.fock_cutoff,
        "integrator_step": traj.step,
        "tail_max": traj.tail_max,
    }
    return header, columns, traj, extra


def _rotation_columns(cfg: ScenarioConfig, traj: TrajectoryResult) -> tuple[list[str], list[np.ndarray]]:
    spec = RotationSpec(cfg.params.N, cfg.params.M, cfg.pulse, cfg.params.chi)
    fid = rotation_fidelity(traj, spec)
    theta = np.array([rotation_angle(spec, float(t)) for t in traj.times])
    header = [f"F_analytic", "P_0_analytic", f"P_{cfg.params.M}_analytic"]
    columns = [fid, np.cos(theta / 2.0) ** 2, np.sin(theta / 2.0) ** 2]
    return header, columns


def _sweep_point(args) -> tuple[DensityMatrix, int]:
    params, g_value, eps0, cutoff, cap, tail = args
    rho, used = steady_state_auto(
        replace(params, g=float(g_value)), eps0,
        fock_cutoff=cutoff, cutoff_cap=cap, tail_limit=tail,
    )
    return rho, used


def run_config(cfg: ScenarioConfig, out_dir: str | Path, *, workers: int = 1) -> RunOutcome:
    """Execute one scenario; writes CSV + manifest into out_dir."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / cfg.output
    started = time.perf_counter()
    manifest: dict[str, Any] = {
        "name": cfg.name,
        "scenario": cfg.raw,
        "version": __version__,
        "workers": workers,
    }
    data: Any

    if cfg.kind in ("rotation", "filter_pulse", "custom"):
        header, columns, traj, extra = _run_time_evolution(cfg)
        manifest.update(extra)
        data = traj
        rotation_ok = cfg.params.N / 2.0 <= cfg.params.M < cfg.params.N
        if cfg.kind in ("filter_pulse", "custom"):
            leak = np.array([filter_leakage(r, cfg.params.N) for r in traj.states])
            header += ["n_mean", "leakage"]
            columns += [traj.observables["n_mean"], leak]
        if cfg.kind == "rotation" or (cfg.kind == "custom" and rotation_ok):
            rot_header, rot_columns = _rotation_columns(cfg, traj)
            header += rot_header
            columns += rot_columns
        if cfg.kind == "rotation":
            spec = RotationSpec(cfg.params.N, cfg.params.M, cfg.pulse, cfg.params.chi)
            manifest["validity_ratio"] = spec.validity_ratio(cfg.params.g)

    elif cfg.kind == "filter_steady_sweep":
        jobs = [
            (cfg.params, gv, cfg.pulse.eps0, cfg.fock_cutoff, CUTOFF_CAP, TAIL_LIMIT)
            for gv in cfg.g_grid
        ]
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_sweep_point, jobs))
        else:
            results = [_sweep_point(job) for job in jobs]
        states = [r[0] for r in results]
        cutoffs = [r[1] for r in results]
        probs = np.array(
            [fock_probabilities(rho)[: cfg.emit_k_max + 1] for rho in states]
        )
        n_mean = np.array([float(np.sum(fock_probabilities(r) * np.arange(r.dims.fock_cutoff))) for r in states])
        leak = np.array([filter_leakage(r, cfg.params.N) for r in states])
        header = ["g"] + [f"P_{k}" for k in range(cfg.emit_k_max + 1)] + ["n_mean", "leakage"]
        columns = [cfg.g_grid] + [probs[:, k] for k in range(cfg.emit_k_max + 1)] + [n_mean, leak]
        manifest.update(
            fock_cutoff_used=max(cutoffs),
            integrator_step=None,
            tail_max=max(float(fock_probabilities(r)[-1] + fock_probabilities(r)[-2]) for r in states),
        )
        data = SweepResult(values=cfg.g_grid, states=states, cutoffs=cutoffs)

    elif cfg.kind == "absorption_scan":
        dims = HilbertDims(cfg.fock_cutoff)
        eps0 = cfg.eps0 if cfg.eps0 is not None else default_scan_drive(cfg.params)
        scan = absorption_scan(
            cfg.params, dims, cfg.delta_grid, eps0, workers=workers, keep_states=True
        )
        scan_g0 = absorption_scan(
            replace(cfg.params, g=0.0), dims, cfg.delta_grid, eps0, workers=workers
        )
        header = ["delta_p", "absorption", "absorption_g0", "n_mean"]
        columns = [cfg.delta_grid, scan.absorption, scan_g0.absorption, scan.n_mean]
        manifest.update(
            fock_cutoff_used=max(scan.cutoff_used, scan_g0.cutoff_used),
            integrator_step=None,
            tail_max=max(
                float(fock_probabilities(r)[-1] + fock_probabilities(r)[-2]) for r in scan.states
            ),
            eps0_used=eps0,
        )
        data = (scan, scan_g0)

    else:  # pragma: no cover - kinds are validated upstream
        raise ConfigError(f"unknown scenario kind {cfg.kind!r}")

    _write_csv(csv_path, header, columns)
    manifest["wall_clock_s"] = time.perf_counter() - started
    manifest_path = out_dir / (csv_path.stem + ".manifest.json")
    _atomic_write(manifest_path, json.dumps(manifest, indent=2, sort_keys=True, default=float) + "\n")
    return RunOutcome(cfg.name, csv_path, manifest_path, manifest, data)


# ---------------------------------------------------------------------------
# Presets mirroring the shipped experiment parameter sets.

def _rotation_preset(name, n_jc, m_drive, g, eps0, t_max, points):
    return {
        "kind": "rotation",
        "name": name,
        "output": name + ".csv",
        "params": {"N": n_jc, "M": m_drive, "g": g, "delta_p": 0.0, "chi": 0.0,
                   "kappa": 1.0, "gamma": 0.5, "gamma_phi": 0.5},
        "pulse": {"kind": "constant", "eps0": eps0},
        "time_grid": {"t_max": t_max, "points": points},
    }


def _filter_pulse_preset(name, n_jc, g):
    return {
        "kind": "filter_pulse",
        "name": name,
        "output": name + ".csv",
        "params": {"N": n_jc, "M": 1, "g": g, "delta_p": 0.0, "chi": 0.0,
                   "kappa": 1.0, "gamma": 0.5, "gamma_phi": 0.5},
        "pulse": {"kind": "gaussian", "eps_max": 4.0, "duration": math.sqrt(2.0), "t_center": 10.0},
        "time_grid": {"t_max": 20.0, "points": 801},
    }


def _filter_sweep_preset(name, n_jc):
    return {
        "kind": "filter_steady_sweep",
        "name": name,
        "output": name + ".csv",
        "params": {"N": n_jc, "M": 1, "g": 0.1, "delta_p": 0.0, "chi": 0.0,
                   "kappa": 1.0, "gamma": 0.5, "gamma_phi": 0.5},
        "pulse": {"kind": "constant", "eps0": 2.0},
        "g_grid": {"start": 0.1, "stop": 100.0, "points": 25, "log": True},
    }


def _absorption_preset(name, n_jc, rates):
    return {
        "kind": "absorption_scan",
        "name": name,
        "output": name + ".csv",
        "params": {"N": n_jc, "M": n_jc, "g": 0.25, "delta_p": 0.0, "chi": 0.0,
                   "kappa": 1.0, "gamma": rates, "gamma_phi": rates},
        "delta_grid": {"start": -0.75, "stop": 0.75, "points": 301},
    }


ALL_CONFIGS: dict[str, dict] = {
    "fig2a": _rotation_preset("fig2a", 2, 1, 1000.0, 100.0, 0.05, 501),
    "fig2b": _rotation_preset("fig2b", 2, 1, 100.0, 10.0, 0.5, 501),
    "fig2c": _rotation_preset("fig2c", 3, 2, 1000.0, 100.0, 0.045, 451),
    "fig2d": _rotation_preset("fig2d", 3, 2, 100.0, 10.0, 0.45, 451),
    "fig3a": _filter_pulse_preset("fig3a", 2, 0.0),
    "fig3b": _filter_pulse_preset("fig3b", 2, 20.0),
    "fig3c": _filter_pulse_preset("fig3c", 3, 20.0),
    "fig3d": _filter_sweep_preset("fig3d", 2),
    "fig3e": _filter_sweep_preset("fig3e", 3),
    "fig3f": _filter_sweep_preset("fig3f", 4),
    "fig4a-lowdiss": _absorption_preset("fig4a-lowdiss", 1, 1e-4),
    "fig4a-highdiss": _absorption_preset("fig4a-highdiss", 1, 0.1),
    "fig4b-lowdiss": _absorption_preset("fig4b-lowdiss", 2, 1e-4),
    "fig4b-highdiss": _absorption_preset("fig4b-highdiss", 2, 0.1),
    "fig4c-lowdiss": _absorption_preset("fig4c-lowdiss", 3, 1e-4),
    "fig4c-highdiss": _absorption_preset("fig4c-highdiss", 3, 0.1),
    "fig4d-lowdiss": _absorption_preset("fig4d-lowdiss", 4, 1e-4),
    "fig4d-highdiss": _absorption_preset("fig4d-highdiss", 4, 0.1),
}

PRESET_GROUPS: dict[str, list[str]] = {
    **{name: [name] for name in ALL_CONFIGS},
    "fig2": ["fig2a", "fig2b", "fig2c", "fig2d"],
    "fig3-pulse": ["fig3a", "fig3b", "fig3c"],
    "fig3-right": ["fig3d", "fig3e", "fig3f"],
    "fig3": ["fig3a", "fig3b", "fig3c", "fig3d", "fig3e", "fig3f"],
    "fig4": [
        "fig4a-lowdiss", "fig4a-highdiss", "fig4b-lowdiss", "fig4b-highdiss",
        "fig4c-lowdiss", "fig4c-highdiss", "fig4d-lowdiss", "fig4d-highdiss",
    ],
}


def preset_configs(name: str) -> list[ScenarioConfig]:
    if name not in PRESET_GROUPS:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(sorted(PRESET_GROUPS))}")
    return [config_from_dict(ALL_CONFIGS[cfg_name]) for cfg_name in PRESET_GROUPS[name]]


def materialize_preset(name: str, out_dir: str | Path) -> list[Path]:
    """Write the preset's config files; returns the written paths."""
    if name not in PRESET_GROUPS:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(sorted(PRESET_GROUPS))}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for cfg_name in PRESET_GROUPS[name]:
        path = out_dir / f"{cfg_name}.yaml"
        _atomic_write(path, yaml.safe_dump(ALL_CONFIGS[cfg_name], sort_keys=True))
        paths.append(path)
    return paths
