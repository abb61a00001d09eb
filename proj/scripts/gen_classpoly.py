#!/usr/bin/env python3
"""Generate integer class polynomials H_D(x) for small discriminants.

Roots are j((-b+sqrt(D))/(2a)) over reduced primitive forms, evaluated with
mpmath at high precision and rounded.  Output is data/classpoly.json with
decimal coefficient strings, constant term first.
"""
import json
import math
import sys

import mpmath as mp

mp.mp.dps = 200


def reduced_forms(D):
    forms = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, abs(b)), c) != 1:
                continue
            forms.append((a, b, c))
        a += 1
    return forms


def class_poly(D):
    poly = [mp.mpc(1)]
    for a, b, _ in reduced_forms(D):
        tau = (-b + mp.sqrt(mp.mpf(D))) / (2 * a)
        j = 1728 * mp.kleinj(tau)
        nxt = [mp.mpc(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] += c
            nxt[i] -= c * j
        poly = nxt
    out = []
    for c in poly:
        r = int(mp.nint(c.real))
        if abs(c.real - r) > mp.mpf(10) ** -40 or abs(c.imag) > mp.mpf(10) ** -40:
            sys.exit(f"precision loss at D={D}")
        out.append(str(r))
    return out


def main():
    bound = int(sys.argv[1]) if len(sys.argv) > 1 else 80
    path = sys.argv[2] if len(sys.argv) > 2 else "data/classpoly.json"
    table = {}
    for n in range(3, bound + 1):
        D = -n
        if D % 4 not in (0, 1):
            continue
        table[str(D)] = class_poly(D)
    with open(path, "w") as fh:
        json.dump({"bound": bound, "H": table}, fh, indent=1, sort_keys=True)
        fh.write("\n")


if __name__ == "__main__":
    main()
