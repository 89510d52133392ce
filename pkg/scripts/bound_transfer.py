"""Sweep the conditioning of V and compare frame bounds of Theta o V with the spectrum of V^*V.

The last column counts trials where the Riesz flag (a threshold on
A = sigma_min^2) matches the test sigma_min > 1e-8 on V. The two thresholds
disagree when sigma_min lies in (1e-8, 1e-4], visible near cond 1e8 to 1e12.

Usage: python scripts/bound_transfer.py --n 6 --trials 20 --out sweep.csv
"""
import argparse
import csv
import sys

import numpy as np

from cgframes import certify, compose
from cgframes.generators import pinned_singular_values, random_onb, random_operator, stream


def run(n, trials, conds, seed):
    rows = []
    for cond in conds:
        worst = 0.0
        agree = 0
        for t in range(trials):
            rng = stream(seed + t, f"sweep-{cond:g}")
            basis = random_onb(seed + t, n, [1] * n, list(rng.uniform(0.2, 5.0, n)))
            s = pinned_singular_values(rng, n, 1.0 / np.sqrt(cond), 1.0)[::-1].copy()
            V = random_operator(seed + t, n, s)
            cert = certify(compose(basis, V))
            err = max(abs(cert.lower_bound - s[-1] ** 2), abs(cert.upper_bound - s[0] ** 2))
            worst = max(worst, err)
            agree += cert.is_riesz_basis == (s[-1] > 1e-8)
        rows.append({"cond_VstarV": cond, "trials": trials, "max_bound_error": worst, "riesz_agreements": agree})
    return rows


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="optional CSV path")
    args = p.parse_args(argv)
    rows = run(args.n, args.trials, [1.0, 1e2, 1e4, 1e8, 1e12, 1e16, 1e18], args.seed)
    print(f"{'cond(V*V)':>10} {'max |bound - sigma^2|':>22} {'riesz ok':>9}")
    for r in rows:
        print(f"{r['cond_VstarV']:>10.0e} {r['max_bound_error']:>22.2e} {r['riesz_agreements']:>5}/{r['trials']}")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
