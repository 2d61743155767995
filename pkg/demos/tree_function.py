"""The tree function and its coordinates.

Everything downstream runs in three interchangeable coordinates: w with
w = x e^w, the shifted u = w/(1-w), and y = 1/(1-w).  This script shows
the series, the closed form n^(n-1)/n! for its coefficients, and the way
a y-polynomial turns into x-coefficients.
"""

import math
from fractions import Fraction

from hurwitz.algebra.poly import SparsePoly
from hurwitz.algebra.series import expand_y_to_w, tree_coeffs, x_coefficient


def main():
    order = 8
    w = tree_coeffs(order)
    print("[x^n] w for n = 1..8:")
    print("  ", ", ".join(str(w[n]) for n in range(1, order + 1)))
    print("closed form n^(n-1)/n! for the same range:")
    print("  ", ", ".join(
        str(Fraction(n ** (n - 1), math.factorial(n))) for n in range(1, order + 1)
    ))

    # y = 1/(1-w) counts nothing by itself, but every coefficient is
    # visible: [w^k] y = 1 for all k
    y = SparsePoly.variable("Y", 1, 0)
    jet = expand_y_to_w(y, order)
    print("\n[w^k] y for k = 0..8:", [str(jet.coeff((k,))) for k in range(order + 1)])

    # and in x-coordinates [x^n] y = n^n/n!
    print("[x^n] y for n = 1..6:")
    for n in range(1, 7):
        got = x_coefficient(jet, (n,))
        assert got == Fraction(n ** n, math.factorial(n))
        print(f"   n={n}: {got}")

    print("\nall identities verified exactly")


if __name__ == "__main__":
    main()
