#!/usr/bin/env python3
"""Independent oracle for Eisenstein x^2 + a1 x + a0 over F_2((T)).

Two extensions given by f = x^2+a1x+a0 and g = x^2+b1x+b0 are isomorphic iff g
has a root c0 + c1*pi in F[x]/(f).  Comparing pi-coordinates gives c1 = b1/a1
and the Artin-Schreier condition  z^2 + z = (c1^2 a0 + b0)/b1^2  for z in F.
Solvability in F_2((T)) is decided by the usual reduction: T^{-2m} ~ T^{-m},
positive powers are always reachable, the constant 1 never is.
"""
import itertools
import sys
from fractions import Fraction

PREC = 40  # bits kept after normalisation; far above what M <= 12 needs


class L:
    """Laurent series over F_2 as (valuation, bitmask of PREC coefficients)."""

    def __init__(self, v, bits):
        self.v, self.bits = v, bits & ((1 << PREC) - 1)
        self.norm()

    def norm(self):
        if self.bits == 0:
            return
        while not self.bits & 1:
            self.bits >>= 1
            self.v += 1

    def zero(self):
        return self.bits == 0

    def __add__(self, o):
        if self.zero():
            return o
        if o.zero():
            return self
        v = min(self.v, o.v)
        return L(v, (self.bits << (self.v - v)) ^ (o.bits << (o.v - v)))

    def __mul__(self, o):
        a, b, r = self.bits, o.bits, 0
        i = 0
        while b:
            if b & 1:
                r ^= a << i
            b >>= 1
            i += 1
        return L(self.v + o.v, r)

    def inv(self):
        # power series inverse of the unit part, bit by bit
        a, r = self.bits, 1
        for k in range(1, PREC):
            prod = L(0, a) * L(0, r)
            if (prod.bits >> k) & 1 if prod.v == 0 else False:
                r |= 1 << k
        return L(-self.v, r)


def from_digits(digits, start):
    bits = 0
    for i, d in enumerate(digits):
        bits |= d << i
    return L(start, bits)


def in_wp(k):
    """Is k in {z^2 + z : z in F_2((T))}?  k known to far more than 1 digit."""
    if k.zero():
        return True
    coeffs = {k.v + i: 1 for i in range(PREC) if (k.bits >> i) & 1}
    neg = {e for e in coeffs if e <= 0}
    changed = True
    while changed:
        changed = False
        for e in sorted(neg):
            if e < 0 and e % 2 == 0:
                neg.discard(e)
                neg ^= {e // 2}
                changed = True
                break
    return not neg


def isomorphic(f, g):
    a1, a0 = f
    b1, b0 = g
    c1 = b1 * a1.inv()
    k = (c1 * c1 * a0 + b0) * (b1 * b1).inv()
    return in_wp(k)


def run(M, dmax):
    """Enumerate classes with delta = 2 nu(a1) <= dmax, Krasner-truncated.

    A class only depends on f mod p^(delta+1) (Krasner radius delta+1 for n=2),
    so a1 and a0 are enumerated modulo T^(delta+1) with nu(a1) = j exactly.
    """
    classes = []  # (delta, representative)
    for j in range(1, dmax // 2 + 1):
        delta = 2 * j
        depth = delta + 1
        if depth > M:
            break
        reps = []
        count = 0
        for tail1 in itertools.product((0, 1), repeat=depth - 1 - j):
            a1 = from_digits((1,) + tail1, j)
            for tail0 in itertools.product((0, 1), repeat=depth - 2):
                a0 = from_digits((1,) + tail0, 1)
                count += 1
                if not any(isomorphic(r, (a1, a0)) for r in reps):
                    reps.append((a1, a0))
        # every member of a class also has exactly w=2 roots here
        classes.append((delta, len(reps), count, depth))
    return classes


def main():
    M = int(sys.argv[1]) if len(sys.argv) > 1 else 10
    dmax = int(sys.argv[2]) if len(sys.argv) > 2 else M - 2
    S = Fraction(0)
    for delta, nclasses, count, depth in run(M, dmax):
        sigma = delta - 1
        term = Fraction(nclasses * 2, 2) / (2 ** sigma)  # (n/w) q^-sigma per class
        weighted = Fraction(nclasses, 2) / (2 ** sigma)
        S += term
        frac = Fraction(count, 2 ** (depth - 2) * 2 ** (depth - 1))
        print(f"delta={delta} classes={nclasses} sum_nw={term} sum_1w={weighted} "
              f"eisenstein_fraction={frac} S={S} gap={2 - S}")


if __name__ == "__main__":
    main()
