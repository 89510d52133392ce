"""Certify the two-atom example family, induce its c-frame and split a perturbed copy.

Usage: python scripts/walkthrough.py
"""
import numpy as np

from cgframes import (
    LocalBases,
    certify,
    compose,
    equivalence_report,
    example_2_3,
    onb_plus_riesz_split,
    parseval_pair_split,
    three_onb_split,
    transition_operator,
)
from cgframes.core import block_distance


def show(title, cert):
    flags = ", ".join(k[3:] for k, v in cert.flags().items() if v and k != "is_bessel")
    print(f"{title:<28} A={cert.lower_bound:.6g}  B={cert.upper_bound:.6g}  [{flags or 'bessel only'}]")


def main():
    theta = example_2_3()
    show("example family", certify(theta))
    rep = equivalence_report(theta, LocalBases.identity(theta.dims))
    show("induced c-frame", rep.c_certificate)

    V = np.array([[1.0, 0.5], [0.0, 0.5]])
    fam = compose(theta, V)
    show("example o V", certify(fam))
    print("recovered V:\n", np.round(transition_operator(fam, theta).V.real, 12))

    for split in (parseval_pair_split, three_onb_split, onb_plus_riesz_split):
        sp = split(fam, theta)
        err = block_distance(sp.recombine(), fam)
        coeffs = ", ".join(f"{c:.4g}" for c in sp.coefficients)
        print(f"\n{sp.kind}: coefficients ({coeffs}), reconstruction error {err:.2e}")
        for part, declared in zip(sp.parts, sp.declared):
            show(f"  part declared {declared}", certify(part))


if __name__ == "__main__":
    main()
