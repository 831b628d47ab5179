"""WKB phase sweeps for the families j = q..j_max at fixed q, one CSV per family.

Usage: python3 scripts/sweep_families.py --q 1 --j-max 10 --out-dir sweeps
"""
import argparse
import sys
from pathlib import Path

from ehscatter import cli


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=1)
    ap.add_argument("--j-max", type=int, default=10)
    ap.add_argument("--beta-min", default="0.5")
    ap.add_argument("--beta-max", default="120")
    ap.add_argument("--steps", type=int, default=240)
    ap.add_argument("--out-dir", type=Path, default=Path("sweeps"))
    args = ap.parse_args(argv)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for j in range(args.q, args.j_max + 1):
        out = args.out_dir / f"wkb_j{j}_q{args.q}.csv"
        code = cli.main(["wkb-sweep", "--j", str(j), "--q", str(args.q), "--beta-min", args.beta_min,
                         "--beta-max", args.beta_max, "--steps", str(args.steps), "--out", str(out)])
        if code:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
