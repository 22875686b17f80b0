"""Stand-alone certificate checker.

Works from raw structure constants ``c[i][j][k]`` and a derivation matrix
given as nested lists (column ``i`` = image of ``e_i``). Deliberately uses
nothing from the rest of the package except the exact solver, so a
certificate produced by the construction code is re-checked along an
independent path.
"""

from __future__ import annotations

from fractions import Fraction

from .exactlin import Matrix, solve


def _nonzero(c):
    n = len(c)
    return [
        (i, j, [(k, Fraction(x)) for k, x in enumerate(c[i][j]) if x])
        for i in range(n)
        for j in range(n)
        if any(c[i][j])
    ]


def _bracket(nz, n, u, v):
    out = [Fraction(0)] * n
    for i, j, terms in nz:
        s = u[i] * v[j]
        if s:
            for k, x in terms:
                out[k] += s * x
    return out


def _apply(d, v):
    return [sum((d[r][k] * v[k] for k in range(len(v)) if v[k]), Fraction(0)) for r in range(len(d))]


def leibniz_holds(c, d) -> bool:
    """Direct expansion of ``D[e_i,e_j] = [De_i,e_j] + [e_i,De_j]`` over all pairs."""
    n = len(c)
    d = [[Fraction(x) for x in row] for row in d]
    cols = [[d[r][i] for r in range(n)] for i in range(n)]
    unit = [[Fraction(int(i == k)) for k in range(n)] for i in range(n)]
    nz = _nonzero(c)
    for i in range(n):
        for j in range(i + 1, n):
            lhs = _apply(d, [Fraction(x) for x in c[i][j]])
            a = _bracket(nz, n, cols[i], unit[j])
            b = _bracket(nz, n, unit[i], cols[j])
            if any(lhs[k] != a[k] + b[k] for k in range(n)):
                return False
    return True


def inner_system_inconsistent(c, d) -> bool:
    """True when no ``z`` has ``[w, z] = D w`` for every basis vector ``w``."""
    n = len(c)
    if n == 0:
        return False
    # unknown z_l; equation for entry (r, w): sum_l z_l c[w][l][r] = D[r][w]
    rows = []
    rhs = []
    for r in range(n):
        for w in range(n):
            rows.append([Fraction(c[w][l][r]) for l in range(n)])
            rhs.append(Fraction(d[r][w]))
    return solve(Matrix(rows, n), rhs) is None


def check_outer(c, d) -> tuple[bool, bool]:
    """(Leibniz holds, inner system is inconsistent)."""
    return leibniz_holds(c, d), inner_system_inconsistent(c, d)
