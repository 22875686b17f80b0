"""Independent reference computations built on sympy.

Nothing here touches lieder's linear algebra: the Leibniz system is set up
symbolically and solved with sympy, so the expected dimensions in the tests
come from a separate route.
"""

from __future__ import annotations

import sympy as sp


def _consts(L):
    n = L.dim
    return [[[sp.Rational(x.numerator, x.denominator) for x in L.basis_bracket(i, j)] for j in range(n)] for i in range(n)]


def _br(c, u, v):
    n = len(c)
    return [sum(u[i] * v[j] * c[i][j][k] for i in range(n) for j in range(n)) for k in range(n)]


def der_dim(L) -> int:
    n = L.dim
    c = _consts(L)
    D = sp.Matrix(n, n, lambda r, s: sp.Symbol(f"d_{r}_{s}"))
    unknowns = list(D)
    eye = sp.eye(n)
    eqs = []
    for i in range(n):
        for j in range(i + 1, n):
            lhs = D * sp.Matrix(c[i][j])
            a = _br(c, list(D[:, i]), list(eye[:, j]))
            b = _br(c, list(eye[:, i]), list(D[:, j]))
            eqs.extend(sp.expand(lhs[k] - a[k] - b[k]) for k in range(n))
    eqs = [e for e in eqs if e != 0]
    if not eqs:
        return n * n
    A, _ = sp.linear_eq_to_matrix(eqs, unknowns)
    return n * n - A.rank()


def inder_dim(L) -> int:
    n = L.dim
    c = _consts(L)
    cols = []
    for l in range(n):
        # ad(e_l): column w is [e_w, e_l]
        cols.append([c[w][l][r] for r in range(n) for w in range(n)])
    if not cols:
        return 0
    return sp.Matrix(cols).rank()


def center_dim(L) -> int:
    n = L.dim
    c = _consts(L)
    rows = [[c[z][i][k] for z in range(n)] for i in range(n) for k in range(n)]
    return n - sp.Matrix(rows).rank() if rows else n


def jacobi_residuals(L):
    n = L.dim
    c = _consts(L)
    e = sp.eye(n)
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            for l in range(j + 1, n):
                t1 = _br(c, c[i][j], list(e[:, l]))
                t2 = _br(c, c[j][l], list(e[:, i]))
                t3 = _br(c, c[l][i], list(e[:, j]))
                r = [sp.simplify(t1[k] + t2[k] + t3[k]) for k in range(n)]
                if any(r):
                    out[(i, j, l)] = r
    return out


def solvable_inner(L, D) -> bool:
    """Does some z have ad(z) = D?  Solved with sympy.linsolve."""
    n = L.dim
    c = _consts(L)
    z = sp.symbols(f"z0:{n}")
    eqs = []
    for w in range(n):
        for r in range(n):
            eqs.append(sum(z[l] * c[w][l][r] for l in range(n)) - sp.Rational(D[r][w]))
    return sp.linsolve(eqs, z) != sp.EmptySet


def derived_dims(L):
    n = L.dim
    c = _consts(L)
    cur = sp.eye(n)
    dims = [n]
    while True:
        vecs = [_br(c, list(cur[:, a]), list(cur[:, b])) for a in range(cur.cols) for b in range(cur.cols)]
        M = sp.Matrix(vecs).T if vecs else sp.zeros(n, 0)
        rk = M.rank() if vecs else 0
        if rk == dims[-1] or rk == 0:
            if rk == 0:
                dims.append(0)
            return dims
        dims.append(rk)
        cur = M.columnspace()
        cur = sp.Matrix.hstack(*cur)
