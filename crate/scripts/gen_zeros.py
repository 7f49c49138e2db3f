#!/usr/bin/env python3
"""Generate tables of nontrivial zeta-zero ordinates with mpmath.

Writes one ordinate per line, 9 decimal places, ascending, with a '#'
comment header. Usage:

    python3 scripts/gen_zeros.py data/zeros_first100.txt 100
    python3 scripts/gen_zeros.py data/zeros_10k.txt --up-to 10000

The --up-to form emits every zero with ordinate <= T plus a few beyond,
so T itself stays inside table coverage.
"""

import argparse
import sys

import mpmath


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("out")
    ap.add_argument("count", nargs="?", type=int)
    ap.add_argument("--up-to", type=float, dest="up_to")
    args = ap.parse_args()
    if (args.count is None) == (args.up_to is None):
        ap.error("give either a count or --up-to T")

    mpmath.mp.dps = 20
    lines = []
    n = 0
    while True:
        n += 1
        gamma = mpmath.zetazero(n).imag
        lines.append(mpmath.nstr(gamma, 16, strip_zeros=False))
        if args.count is not None and n >= args.count:
            break
        # keep 5 ordinates past T so queries at exactly T are covered
        if args.up_to is not None and float(gamma) > args.up_to and n % 1 == 0:
            extra = 5
            for m in range(n + 1, n + 1 + extra):
                g = mpmath.zetazero(m).imag
                lines.append(mpmath.nstr(g, 16, strip_zeros=False))
            break
        if n % 500 == 0:
            print(f"{n} zeros...", file=sys.stderr)

    with open(args.out, "w") as f:
        f.write(f"# nontrivial zeta zero ordinates, mpmath zetazero, dps=20\n")
        f.write(f"# count={len(lines)}\n")
        for s in lines:
            # 9 decimal places, Odlyzko-style fixed point
            f.write(f"{float(s):.9f}\n")
    print(f"wrote {len(lines)} ordinates to {args.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
