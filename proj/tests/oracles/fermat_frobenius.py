"""Independent check of Frobenius-power memberships on F_7[x,y,z]/(x^3+y^3+z^3).

R is free over F_7[x,y] with basis 1, z, z^2, and (x^q, y^q)R is the direct sum
of (x^q, y^q) on each basis element.  An element lies in the ideal iff every
monomial x^a y^b z^i of its reduced form has a >= q or b >= q.
"""
from collections import defaultdict

P = 7


def reduce_z(poly):
    """Rewrite z^3 -> -x^3 - y^3 until every z exponent is below 3."""
    out = defaultdict(int)
    stack = list(poly.items())
    while stack:
        (a, b, c), coef = stack.pop()
        coef %= P
        if coef == 0:
            continue
        if c < 3:
            out[(a, b, c)] = (out[(a, b, c)] + coef) % P
            continue
        stack.append(((a + 3, b, c - 3), -coef))
        stack.append(((a, b + 3, c - 3), -coef))
    return {k: v for k, v in out.items() if v}


def z_power_reduced(n):
    # z^n = z^(n mod 3) * (-(x^3 + y^3))^(n div 3), expanded binomially mod p
    k, r = divmod(n, 3)
    out = {}
    binom = 1
    for i in range(k + 1):
        if i > 0:
            binom = binom * (k - i + 1) // i
        coef = binom * (-1) ** k % P
        if coef:
            out[(3 * i, 3 * (k - i), r)] = coef
    return out


def times_monomial(poly, a, b, c):
    return reduce_z({(x + a, y + b, z + c): v for (x, y, z), v in poly.items()})


def in_frobenius_power(poly, q):
    return all(a >= q or b >= q for (a, b, _c) in poly)


CANDIDATES = {"1": (0, 0, 0), "x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1),
              "x^2": (2, 0, 0), "y^2": (0, 2, 0), "z^2": (0, 0, 2)}

if __name__ == "__main__":
    for e in range(1, 5):
        q = P ** e
        z2q = z_power_reduced(2 * q)
        zq = z_power_reduced(q)
        row = [f"e={e}", f"z^2q:{int(in_frobenius_power(z2q, q))}"]
        for name, m in CANDIDATES.items():
            row.append(f"{name}*z^2q:{int(in_frobenius_power(times_monomial(z2q, *m), q))}")
        for name, m in CANDIDATES.items():
            row.append(f"{name}*z^q:{int(in_frobenius_power(times_monomial(zq, *m), q))}")
        print(" ".join(row))
