"""Residual of the canonical dual reconstruction as the bound ratio B/A grows.

Usage: python scripts/dual_conditioning.py --n 8 --extra 4
"""
import argparse
import sys

import numpy as np

from cgframes import canonical_dual
from cgframes.core import mixed_frame_operator
from cgframes.generators import random_frame_with_bounds


def residual(fam):
    dual = canonical_dual(fam)
    I = np.eye(fam.ambient_dim)
    return max(np.linalg.norm(mixed_frame_operator(dual, fam) - I, 2),
               np.linalg.norm(mixed_frame_operator(fam, dual) - I, 2))


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--extra", type=int, default=4, help="coefficient dimensions beyond n")
    p.add_argument("--trials", type=int, default=10)
    args = p.parse_args(argv)
    dims = [2] * ((args.n + args.extra) // 2) + [1] * ((args.n + args.extra) % 2)
    print(f"{'B/A':>8} {'median residual':>16} {'max residual':>13}")
    for ratio in (1e0, 1e2, 1e4, 1e6, 1e8, 1e10):
        res = [residual(random_frame_with_bounds(s, args.n, dims, None, 1.0, ratio)) for s in range(args.trials)]
        print(f"{ratio:>8.0e} {np.median(res):>16.2e} {np.max(res):>13.2e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
