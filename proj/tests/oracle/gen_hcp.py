"""Independent reference data for the test suite.

Class polynomials come from mpmath's Klein invariant (j = 1728 * kleinj)
evaluated at the CM points of brute-force enumerated reduced forms, and the
resultant from sympy. Run from the repository root:

    python3 tests/oracle/gen_hcp.py > tests/data/hcp_oracle.txt
"""

import math
import sys

import mpmath
import sympy


def reduced_forms(d):
    out = []
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a + 1, a + 1):
            if (b * b - d) % (4 * a):
                continue
            c = (b * b - d) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, abs(b)), c) != 1:
                continue
            out.append((a, b, c))
        a += 1
    return out


def hilbert(d):
    forms = reduced_forms(d)
    bits = sum(math.pi * math.sqrt(-d) / a for a, _, _ in forms) / math.log(2)
    mpmath.mp.prec = int(bits) + 200
    x = sympy.Symbol("x")
    poly = [mpmath.mpc(1)]
    for a, b, _ in forms:
        tau = (-b + mpmath.sqrt(mpmath.mpf(d))) / (2 * a)
        j = 1728 * mpmath.kleinj(tau)
        nxt = [mpmath.mpc(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] += c
            nxt[i] -= c * j
        poly = nxt
    coeffs = []
    for c in poly:
        r = int(mpmath.nint(c.real))
        if abs(c.real - r) > 0.01 or abs(c.imag) > 0.01:
            raise SystemExit(f"rounding failed for {d}")
        coeffs.append(r)
    return coeffs


def main():
    print("# D then coefficients of H_D in ascending degree")
    for n in range(3, 301):
        d = -n
        if d % 4 not in (0, 1):
            continue
        print(d, *hilbert(d))
    x = sympy.Symbol("x")
    h15 = sympy.Poly(list(reversed(hilbert(-15))), x)
    h7 = sympy.Poly(list(reversed(hilbert(-7))), x)
    print("# resultant", -15, -7, sympy.resultant(h15, h7))
    sys.stdout.flush()


if __name__ == "__main__":
    main()
