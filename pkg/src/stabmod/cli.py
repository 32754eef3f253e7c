"""Command-line harness: built-in scenarios, scenario files and sweeps.

Exit codes: 0 every verdict CONFIRMED, 1 some verdict REFUTED, 2 malformed
input, 3 precision exhausted, 4 some verdict INDETERMINATE.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .arlab import CONFIRMED, INDETERMINATE, REFUTED
from .errors import Indeterminate, PrecisionError
from .scenario import ScenarioError, builtin_names, load_builtin, load_scenario, run_scenario
from .sweep import SweepConfig, run_cell

log = logging.getLogger("stabmod")

EXIT_OK, EXIT_REFUTED, EXIT_PARSE, EXIT_PRECISION, EXIT_INDETERMINATE = 0, 1, 2, 3, 4


def _verdicts(doc: dict) -> list:
    if "reports" in doc:
        return [r["verdict"] for r in doc["reports"]]
    out = []
    for cell in doc.get("cells", []):
        if "error" in cell:
            out.append(INDETERMINATE)
        for reports in cell.get("suites", {}).values():
            out.extend(r["verdict"] for r in reports)
    return out


def exit_code(doc: dict) -> int:
    vs = _verdicts(doc)
    if REFUTED in vs:
        return EXIT_REFUTED
    if INDETERMINATE in vs:
        return EXIT_INDETERMINATE
    return EXIT_OK


def _fmt_values(values: dict) -> str:
    return " ".join(f"{k}={json.dumps(v, sort_keys=True, separators=(',', ':'))}" for k, v in values.items())


def _fmt_inputs(inputs: dict) -> str:
    """Module inputs by name, other inputs by value."""
    parts = []
    for k, v in inputs.items():
        if isinstance(v, dict) and "name" in v:
            v = v["name"]
        parts.append(f"{k}={v}" if not isinstance(v, (dict, list)) else f"{k}={json.dumps(v, sort_keys=True, separators=(',', ':'))}")
    return ", ".join(parts)


def render_text(doc: dict) -> str:
    lines = []
    if "reports" in doc:
        r = doc["ring"]
        lines.append(f"scenario {doc['scenario']}: group {doc['group']}, p={r['p']} e={r['e']} m={r['m']}, seed {doc['seed']}")
        for rep in doc["reports"]:
            on = _fmt_inputs(rep["inputs"])
            lines.append(f"[{rep['verdict']}] {rep['claim']} ({rep['paper_anchor']})" + (f" [{on}]" if on else ""))
            lines.append(f"    {_fmt_values(rep['computed_values'])}")
    else:
        lines.append(f"sweep over {len(doc['cells'])} cells, seed {doc['seed']}")
        for cell in doc["cells"]:
            if "error" in cell:
                lines.append(f"{cell['cell']}: {INDETERMINATE} ({cell['error']})")
                continue
            for suite, reports in cell["suites"].items():
                counts = {v: sum(1 for x in reports if x["verdict"] == v) for v in (CONFIRMED, REFUTED, INDETERMINATE)}
                lines.append(f"{cell['cell']} {suite}: " + " ".join(f"{k}={n}" for k, n in counts.items() if n))
                for rep in reports:
                    if rep["verdict"] != CONFIRMED:
                        lines.append(f"    [{rep['verdict']}] {rep['claim']} [{_fmt_inputs(rep['inputs'])}] "
                                     f"{_fmt_values(rep['computed_values'])}")
        total = _verdicts(doc)
        lines.append(f"total: {len(total)} checks, {total.count(REFUTED)} refuted, {total.count(INDETERMINATE)} indeterminate")
    return "\n".join(lines) + "\n"


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    return render_text(doc)


def _run_cell_job(args):
    cell, cfg = args
    return run_cell(cell, cfg)


def run_sweep(cfg: SweepConfig) -> dict:
    cells = cfg.cells()
    jobs = [(c, cfg) for c in cells]
    if not jobs:
        results = []
    elif cfg.workers == 1 or len(jobs) == 1:
        results = [_run_cell_job(j) for j in jobs]
    else:
        workers = cfg.workers or os.cpu_count() or 1
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            results = list(pool.map(_run_cell_job, jobs))
    return sweep_document(cfg, results)


def sweep_document(cfg: SweepConfig, results: list) -> dict:
    """The sweep report: config echo, seed and per-cell results sorted by cell name."""
    return {"sweep": {"primes": cfg.primes, "ramification": cfg.ramification, "max_order": cfg.max_order,
                      "groups": cfg.groups, "precision_bump": cfg.precision_bump},
            "seed": cfg.seed, "cells": sorted(results, key=lambda d: d["cell"])}


def load_sweep_config(arg: str) -> SweepConfig:
    if arg == "default":
        return SweepConfig()
    try:
        with open(arg) as fh:
            return SweepConfig.from_json(json.load(fh))
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise ScenarioError(f"bad sweep config {arg}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="stabmod", description="Stable module computations over truncated DVRs.")
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--scenario", help="scenario JSON file")
    src.add_argument("--builtin", help="name of a built-in scenario")
    src.add_argument("--sweep", help="sweep config JSON file, or 'default'")
    src.add_argument("--list", action="store_true", help="list built-in scenarios")
    ap.add_argument("--seed", type=int, default=None, help="seed for randomised searches")
    ap.add_argument("--precision-bump", type=int, default=0, help="extra digits added to m")
    ap.add_argument("--out", help="write the report here instead of stdout")
    ap.add_argument("--format", choices=["text", "json"], default="text")
    ap.add_argument("--workers", type=int, default=None, help="worker processes for sweeps")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.list:
        print("\n".join(builtin_names()))
        return EXIT_OK
    try:
        if args.sweep:
            cfg = load_sweep_config(args.sweep)
            if args.seed is not None:
                cfg.seed = args.seed
            cfg.precision_bump += args.precision_bump
            if args.workers is not None:
                cfg.workers = args.workers
            doc = run_sweep(cfg)
        else:
            sc = load_builtin(args.builtin) if args.builtin else load_scenario(args.scenario)
            doc = run_scenario(sc, seed=args.seed, bump=args.precision_bump)
    except (ScenarioError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PrecisionError as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except Indeterminate as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    text = render(doc, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return exit_code(doc)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
