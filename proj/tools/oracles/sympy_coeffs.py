"""Exact coefficients of Q_{p,q,r} by polynomial division in sympy.

Used once to freeze golden vectors; not part of the build.
"""
import sys

from sympy import Poly, div, symbols

z = symbols("z")


def coeffs(p, q, r):
    num = Poly(z ** (p * q * r) - 1, z) * Poly(z**p - 1, z) * Poly(z**q - 1, z) * Poly(z**r - 1, z)
    den = Poly(z ** (p * q) - 1, z) * Poly(z ** (q * r) - 1, z) * Poly(z ** (r * p) - 1, z) * Poly(z - 1, z)
    quo, rem = div(num, den, domain="ZZ")
    assert rem.is_zero
    return [int(c) for c in reversed(quo.all_coeffs())]


if __name__ == "__main__":
    p, q, r = (int(a) for a in sys.argv[1:4])
    print(" ".join(map(str, coeffs(p, q, r))))
