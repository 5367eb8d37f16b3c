#!/usr/bin/env python3
"""Regenerate tests/data/bounds_golden.tsv from the bound formulas.

Kept separate from the Rust implementation on purpose: the golden table is
computed here once with exact fractions and committed, and the test suite
checks the library reproduces it bit for bit.
"""
from fractions import Fraction
from math import comb, isqrt
import os

GRID_N = range(4, 11)
GRID_R = (2, 3, 4)
GRID_K = range(1, 7)


def bounds(n, r, k):
    c = comb(n, r - 1)
    out = {}
    out["trivial"] = (Fraction(k - 1) * c, None)
    out["kalai"] = (Fraction(k - 1, r) * c, None)
    if r % 2 == 0:
        out["tight_path"] = (Fraction(k - 1, 2) * c, None)
    else:
        out["tight_path"] = (Fraction(k + (k - 1) // r, 2) * c, None)
    if r == 2:
        out["perles"] = (Fraction((k - 1) * n, 2), None)
    if r % 2 == 0:
        out["zigzag"] = (Fraction((k - 1) * (r - 1), r) * c, None)
        out["stack_leading"] = (Fraction((k - 1) * (r - 1)) * c, None)
    if k <= r + 1:
        out["small_k"] = (Fraction(k * k, 2 * r) * c, None)
    if r % 2 == 1 and r >= 3:
        a = (k - 1) // r
        b = (r - 1) * (k - 1 - a) // 2
        ab = a * b
        root = isqrt(ab)
        if root * root == ab:
            out["odd_improved"] = (Fraction(a + b + 2 * root, r) * c, None)
        else:
            out["odd_improved"] = (Fraction(a + b, r) * c, (Fraction(2, r) * c, ab))
    return out


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    target = os.path.join(here, "..", "crates", "cgh", "tests", "data", "bounds_golden.tsv")
    os.makedirs(os.path.dirname(target), exist_ok=True)
    with open(target, "w") as fh:
        fh.write("# kind\tn\tr\tk\trational\tirr_coeff\tradicand\n")
        for n in GRID_N:
            for r in GRID_R:
                for k in GRID_K:
                    for kind, (rat, irr) in bounds(n, r, k).items():
                        if irr is None:
                            fh.write(f"{kind}\t{n}\t{r}\t{k}\t{rat.numerator}/{rat.denominator}\t-\t-\n")
                        else:
                            coeff, radicand = irr
                            fh.write(
                                f"{kind}\t{n}\t{r}\t{k}\t{rat.numerator}/{rat.denominator}"
                                f"\t{coeff.numerator}/{coeff.denominator}\t{radicand}\n"
                            )
    print(f"wrote {target}")


if __name__ == "__main__":
    main()
