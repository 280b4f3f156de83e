#!/usr/bin/env python3
"""Finite-volume convergence study for the bundled two-wave scenario.

Thin wrapper over `eulerwaves fv`; extra flags are passed straight through,
so e.g. `--grids 32,64` or `--cfl 0.3` work here too.
"""

import sys
from pathlib import Path

from eulerwaves.cli import main

if __name__ == "__main__":
    scenario = Path(__file__).resolve().parent / "scenarios" / "fv_two_wave.json"
    raise SystemExit(main(["fv", str(scenario), *sys.argv[1:]]))
