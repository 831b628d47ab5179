"""Regenerate the packaged error-bound constants file.

Usage: python3 scripts/scan_olver_constants.py [--check]
"""
import argparse
import math
import sys
from pathlib import Path

from ehscatter.specfun import scan_olver_constants

TARGET = Path(__file__).resolve().parents[1] / "src" / "ehscatter" / "data" / "olver_constants.txt"

DEFINITIONS = {
    "lambda_airy": "sup_x pi |x|^(1/2) M(x)^2, Airy modulus",
    "lambda00": "sup_{x>=0} pi x M0(x)^2, Bessel modulus",
    "lambda01": "sup_{x>=0} pi x M0(x)^2 |cos theta0(x)|",
    "l00": "sup_x pi Omega0(x) M0(x)^2, Omega0(x) = (1+x)/ln(e+1/x)",
    "l01": "sup_x pi Omega0(x) |J0(x)| E0(x) M0(x)",
}


def render(points: int) -> str:
    lines = [
        "# Error-bound constants, generated by scripts/scan_olver_constants.py",
        f"# scan: {points} log-spaced points on [1e-8, 1e5] (both signs for Airy),",
        "# bounded golden-section refinement around the grid maximum;",
        "# a supremum approached only as x -> inf is recorded as its limit.",
    ]
    for name, (val, where) in scan_olver_constants(points).items():
        loc = "limit x -> inf" if math.isinf(where) else f"attained near x = {where:.10g}"
        lines.append(f"# {name}: {DEFINITIONS[name]}; {loc}")
        lines.append(f"{name} = {val:.12g}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--check", action="store_true", help="compare with the packaged file instead of writing")
    parser.add_argument("--points", type=int, default=4000)
    args = parser.parse_args(argv)
    text = render(args.points)
    if args.check:
        same = TARGET.read_text() == text
        print("constants file up to date" if same else "constants file differs from a fresh scan")
        return 0 if same else 1
    TARGET.write_text(text)
    print(f"wrote {TARGET}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
