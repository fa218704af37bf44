"""Classical (v = 1) cluster mutation over sympy, used as an independent oracle.

Implements the textbook sign formula for matrix mutation and the plain
exchange relation on commuting variables; nothing here touches the
package's E/F-matrix route.
"""

import sympy


def classical_mutate_matrix(rows, cols, pos):
    """Standard mutation b' = b + [b_ik]+ [b_kj]+ - [-b_ik]+ [-b_kj]+ at k = pos."""
    kc = cols.index(pos)
    r, m = len(rows), len(cols)
    out = []
    for t in range(r):
        row = []
        for j in range(m):
            if t == pos or cols[j] == pos:
                row.append(-rows[t][j])
            else:
                bik = rows[t][kc]
                bkj = rows[pos][j]
                row.append(rows[t][j]
                           + max(0, bik) * max(0, bkj)
                           - max(0, -bik) * max(0, -bkj))
        out.append(tuple(row))
    return tuple(out)


def classical_mutate_vars(rows, cols, exprs, pos):
    """Exchange y'_k y_k = prod y^{[b]+} + prod y^{[-b]+}, cancelled to Laurent form."""
    kc = cols.index(pos)
    plus = sympy.Integer(1)
    minus = sympy.Integer(1)
    for t in range(len(rows)):
        b = rows[t][kc]
        if b > 0:
            plus *= exprs[t] ** b
        elif b < 0:
            minus *= exprs[t] ** (-b)
    new = sympy.cancel((plus + minus) / exprs[pos])
    out = list(exprs)
    out[pos] = new
    return out


def torus_at_one(elem, symbols):
    """Image of a Laurent-coefficient torus element under v -> 1."""
    total = sympy.Integer(0)
    for a, c in elem.terms.items():
        mono = sympy.Integer(c.at_one())
        for s, e in zip(symbols, a):
            if e:
                mono *= s ** e
        total += mono
    return sympy.expand(total)
