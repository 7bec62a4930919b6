#!/usr/bin/env python3
"""Regenerate sample_data/ by running the simulator CLI presets.

Requires the ``njcsim`` command on PATH.  The simulator guarantees
byte-identical CSV output for identical configs, so reruns only change the
manifests (wall-clock entries).

Usage: python3 tools/generate_sample_data.py [target_dir]
"""

import subprocess
import sys
from pathlib import Path

PRESETS = ("fig2", "fig3", "fig4")


def main() -> int:
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "sample_data"
    target.mkdir(parents=True, exist_ok=True)
    for preset in PRESETS:
        print(f"running preset {preset} ...")
        subprocess.run(["njcsim", "run", preset, "--out", str(target)], check=True)
    print(f"sample data written to {target}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
