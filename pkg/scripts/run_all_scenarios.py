"""Run every bundled config and write the CSVs into one directory.

    python scripts/run_all_scenarios.py [--out results]
"""

import argparse
import sys
from pathlib import Path

from cqedsim import cli

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="results", help="output directory (created if needed)")
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    status = 0
    for cfg in sorted(CONFIG_DIR.glob("*.cfg")):
        code = cli.main(["run", str(cfg), "-o", str(out / f"{cfg.stem}.csv")])
        status = max(status, code)
    return status


if __name__ == "__main__":
    sys.exit(main())
