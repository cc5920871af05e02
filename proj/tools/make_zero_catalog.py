#!/usr/bin/env python3
"""Write the first K nontrivial zeta zero ordinates in the catalog text format."""
import argparse

import mpmath


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=100)
    parser.add_argument("--digits", type=int, default=40, help="significant digits per ordinate")
    parser.add_argument("output")
    args = parser.parse_args()

    mpmath.mp.dps = args.digits + 10
    with open(args.output, "w") as out:
        out.write(f"# first {args.count} nontrivial zeros of zeta, ordinates only (sigma = 1/2, l = 1)\n")
        out.write(f"# computed with mpmath {mpmath.__version__}.zetazero at {mpmath.mp.dps} digits\n")
        for k in range(1, args.count + 1):
            t = mpmath.zetazero(k).imag
            out.write(mpmath.nstr(t, args.digits, strip_zeros=False) + "\n")


if __name__ == "__main__":
    main()
