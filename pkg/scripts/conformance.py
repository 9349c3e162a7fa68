"""Run the fuzz invariant suite over several fields and seeds; write one summary per run.

    python scripts/conformance.py --out runs/ --count 100
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from jordanlie.cli import main as cli


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("conformance"))
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--max-dim", type=int, default=12)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--fields", nargs="+", default=["Q", "F17", "F31"])
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    worst = 0
    for field in args.fields:
        for seed in args.seeds:
            stem = f"fuzz-{field}-{seed}"
            code = cli(["fuzz", "--seed", str(seed), "--count", str(args.count), "--max-dim", str(args.max_dim),
                        "--field", field, "--summary", str(args.out / f"{stem}.txt"),
                        "--out", str(args.out / stem)])
            print(f"{stem}: exit {code}")
            worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
