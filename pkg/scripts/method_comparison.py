#!/usr/bin/env python3
"""Truncation-error comparison of the three arctangent series at equal
term counts, against a high-precision reference.

The conjugate-pair series wins everywhere, by a margin that widens as the
argument shrinks.  Note the crossover between the other two: the
all-positive series beats the alternating one only for largish arguments
(its per-term coefficients are bigger, and its (1+x^2) advantage fades as
x goes to zero).
"""

from __future__ import annotations

import sys
from fractions import Fraction

from machinpi.analysis import compare_methods, format_error


def main() -> int:
    arguments = [Fraction(1, 2), Fraction(1, 5), Fraction(1, 20), Fraction(1, 239)]
    print(f"{'x':>7} {'terms':>6} {'conjugate':>12} {'euler':>12} {'gregory':>12}")
    for x in arguments:
        for terms in (5, 10, 20):
            rows = dict(compare_methods(x, terms, 768))
            print(f"{str(x):>7} {terms:6d} "
                  f"{format_error(rows['conjugate']):>12} "
                  f"{format_error(rows['euler']):>12} "
                  f"{format_error(rows['gregory']):>12}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
