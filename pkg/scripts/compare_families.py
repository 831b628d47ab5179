"""WKB, exact and integrated phases at the first eigenvalues of several families.

Usage: python3 scripts/compare_families.py --count 5 --out-dir compare [--skip-oracle]
"""
import argparse
import sys
from pathlib import Path

from ehscatter import cli

FAMILIES = ((0, 0), (1, 0), (2, 1), (4, 2), (10, 0))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=5)
    ap.add_argument("--out-dir", type=Path, default=Path("compare"))
    ap.add_argument("--skip-oracle", action="store_true")
    args = ap.parse_args(argv)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for j, q in FAMILIES:
        out = args.out_dir / f"compare_j{j}_q{q}.csv"
        argv = ["compare", "--j", str(j), "--q", str(q), "--count", str(args.count), "--out", str(out)]
        print(f"(j,q)=({j},{q}): ", end="", flush=True)
        code = cli.main(argv + (["--skip-oracle"] if args.skip_oracle else []))
        if code:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
