"""Command-line scenario runner.

Subcommands:

  njcsim run <config.yaml | preset> [--out DIR]
  njcsim validate <config.yaml | preset>
  njcsim preset <name> --out DIR
  njcsim preset --list

Exit codes: 0 success, 1 configuration error, 2 runtime error.  The worker
count for sweep parallelism comes from the NJCSIM_WORKERS environment
variable (default 1).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import ConfigError, CutoffEscalationError, IntegrationError, SteadyStateError
from .protocols import scan_workers_from_env
from .scenarios import (
    PRESET_GROUPS,
    load_config,
    materialize_preset,
    preset_configs,
    run_config,
    validate_config_dict,
)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2


def _resolve(target: str) -> list:
    """Configs from a YAML path or a preset name."""
    path = Path(target)
    if path.exists():
        return [load_config(path)]
    if target in PRESET_GROUPS:
        return preset_configs(target)
    raise ConfigError(f"{target!r} is neither a config file nor a preset name")


def _cmd_run(args) -> int:
    workers = scan_workers_from_env()
    configs = _resolve(args.target)
    for cfg in configs:
        outcome = run_config(cfg, args.out, workers=workers)
        print(f"{cfg.name}: wrote {outcome.csv_path} (+ manifest)")
    return EXIT_OK


def _cmd_validate(args) -> int:
    path = Path(args.target)
    if path.exists():
        import yaml

        raw = yaml.safe_load(path.read_text())
        if not isinstance(raw, dict):
            print("error[config]: config must contain a mapping", file=sys.stderr)
            return EXIT_CONFIG
        raw.setdefault("name", path.stem)
        diagnostics = validate_config_dict(raw)
    elif args.target in PRESET_GROUPS:
        diagnostics = []
        from .scenarios import ALL_CONFIGS

        for cfg_name in PRESET_GROUPS[args.target]:
            diagnostics += [f"{cfg_name}: {msg}" for msg in validate_config_dict(ALL_CONFIGS[cfg_name])]
    else:
        print(f"error[config]: {args.target!r} is neither a config file nor a preset name", file=sys.stderr)
        return EXIT_CONFIG
    if diagnostics:
        for msg in diagnostics:
            print(f"invalid: {msg}")
        return EXIT_CONFIG
    print("ok")
    return EXIT_OK


def _cmd_preset(args) -> int:
    if args.list:
        for name in sorted(PRESET_GROUPS):
            print(name)
        return EXIT_OK
    if not args.name:
        print("error[config]: preset name required (or --list)", file=sys.stderr)
        return EXIT_CONFIG
    for path in materialize_preset(args.name, args.out):
        print(f"wrote {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="njcsim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a scenario config or preset")
    run_p.add_argument("target", help="path to a YAML config, or a preset name")
    run_p.add_argument("--out", default=".", help="output directory (default: current)")
    run_p.set_defaults(func=_cmd_run)

    val_p = sub.add_parser("validate", help="check a config without running it")
    val_p.add_argument("target", help="path to a YAML config, or a preset name")
    val_p.set_defaults(func=_cmd_validate)

    pre_p = sub.add_parser("preset", help="materialize preset config files")
    pre_p.add_argument("name", nargs="?", help="preset name")
    pre_p.add_argument("--out", default=".", help="output directory (default: current)")
    pre_p.add_argument("--list", action="store_true", help="list available presets")
    pre_p.set_defaults(func=_cmd_preset)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error[config]: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (IntegrationError, SteadyStateError, CutoffEscalationError) as exc:
        print(f"error[runtime]: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except ValueError as exc:
        print(f"error[config]: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
