"""Run every built-in scenario and write JSON and text reports.

    python scripts/run_builtins.py [--out reports] [--golden]

With --golden the reports are written to tests/golden instead, refreshing
the byte-exact fixtures used by the CLI tests.
"""
import argparse
import sys
from pathlib import Path

from stabmod.cli import main as cli_main
from stabmod.scenario import builtin_names

ROOT = Path(__file__).resolve().parent.parent


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(ROOT / "reports"))
    ap.add_argument("--golden", action="store_true", help="write into tests/golden")
    args = ap.parse_args()
    out = ROOT / "tests" / "golden" if args.golden else Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    worst = 0
    for name in builtin_names():
        for fmt in ("json", "text"):
            code = cli_main(["--builtin", name, "--format", fmt, "--out", str(out / f"{name}.{fmt}")])
            worst = max(worst, code)
        print(f"{name}: exit {code}")
    return worst


if __name__ == "__main__":
    sys.exit(main())
