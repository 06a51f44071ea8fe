"""Independent evaluation of the small axiom-check instances with sympy.

For a cyclic S = R/I the module closure is N + I M, and the pullback of the
identity closure along R -> R/I is the same thing, so every instance reduces
to ideal arithmetic in a polynomial ring over F_7.
"""
from sympy import groebner, symbols

P = 7
x, y, z, w, t = symbols("x y z w t")


def gb(gens, *gs):
    return groebner(list(gens), *gs, modulus=P, order="grevlex")


def contains(gens, f, *gs):
    return gb(gens, *gs).contains(f)


def subset(a, b, *gs):
    return all(contains(b, f, *gs) for f in a)


def intersect(a, b, *gs):
    # t*a + (1-t)*b, eliminate t
    G = groebner([t * f for f in a] + [(1 - t) * g for g in b], t, *gs, modulus=P, order="lex")
    return [g for g in G.exprs if t not in g.free_symbols]


def functoriality():
    # F_7[x], f: R -> R/(x^3), N = (x^2), cl = cl_{R/(x)}
    rel = [x**3]
    lhs = [x**2, x]          # f(N + xR)
    rhs = rel + [x**2, x]    # f(N) + x(R/(x^3))
    return subset(lhs, rhs, x)


def semiresiduality():
    closed_x2 = subset([x**2, x], [x**2], x)
    closed_x = subset([x, x], [x], x)
    # 0^cl in R/(x) is x*(R/(x)) = 0
    zero_in_quotient = contains([x], x, x)
    return closed_x2, closed_x, zero_in_quotient


def faithfulness():
    # pullback of identity along F_7[x,y] -> F_7[x,y]/(x)
    zero_cl = [x]
    m_cl = [x, y, x]
    zero_nonzero = any(not contains([0], f, x, y) for f in zero_cl)
    return zero_nonzero, subset(m_cl, [x, y], x, y)


def gcc_planes():
    I = [x * z, x * w, y * z, y * w]
    Rv = I + [y + w]
    ker = I + [x + z]
    lhs = intersect(Rv, ker, x, y, z, w)
    Jv = I + [(x + z) * (y + w)]
    return contains(lhs, x * y, x, y, z, w), contains(Jv, x * y, x, y, z, w)


def gcc_fermat():
    I = [x**3 + y**3 + z**3]
    lhs = intersect(I + [y], I + [x], x, y, z)
    return subset(lhs, I + [x * y], x, y, z)


if __name__ == "__main__":
    print("functoriality", int(functoriality()))
    print("semiresiduality", *map(int, semiresiduality()))
    print("faithfulness zero_nonzero=%d m_closed=%d" % faithfulness())
    print("gcc_planes xy_in_lhs=%d xy_in_Jv=%d" % gcc_planes())
    print("gcc_fermat", int(gcc_fermat()))
