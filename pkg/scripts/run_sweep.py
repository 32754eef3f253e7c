"""Run the default sweep (or a config file) cell by cell with timings.

    python scripts/run_sweep.py [config.json] [--out reports/sweep.json]

Prints one line per cell with its verdict counts and wall time, then writes
the full report in the same JSON format as `stabmod --sweep`.
"""
import argparse
import collections
import json
import sys
import time
from pathlib import Path

from stabmod.cli import exit_code, load_sweep_config, render, sweep_document
from stabmod.sweep import run_cell

ROOT = Path(__file__).resolve().parent.parent


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("config", nargs="?", default="default")
    ap.add_argument("--out", default=str(ROOT / "reports" / "sweep.json"))
    args = ap.parse_args()
    cfg = load_sweep_config(args.config)
    cells = []
    t_all = time.perf_counter()
    for cell in cfg.cells():
        t0 = time.perf_counter()
        res = run_cell(cell, cfg)
        counts = collections.Counter(r["verdict"] for reps in res["suites"].values() for r in reps)
        print(f"{res['cell']:<22} {dict(counts)} {time.perf_counter() - t0:6.1f} s {res.get('error', '')}", flush=True)
        cells.append(res)
    doc = sweep_document(cfg, cells)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(render(doc, "json"))
    print(f"total {time.perf_counter() - t_all:.1f} s, report in {out}")
    return exit_code(doc)


if __name__ == "__main__":
    sys.exit(main())
