"""Derivations, inner derivations and outer-derivation certificates.

A derivation is stored as an n x n matrix acting on column vectors (column
``i`` is the image of ``e_i``). Spaces of derivations live in Q^(n*n)
through row-major vectorisation, ``D[r][c] -> r*n + c``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import verify
from .errors import InternalInvariantViolation, NotADerivation
from .exactlin import Matrix, Subspace, Vector, nullspace_sparse, solve, span_of
from .liecore import LieAlgebra

BRANCHES = ("case1-early-exit", "case1-torus", "case2-center", "generic-scan")


@dataclass(frozen=True)
class Derivation:
    algebra_dim: int
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.algebra_dim, self.algebra_dim):
            raise ValueError(f"derivation of a {self.algebra_dim}-dimensional algebra must be square")

    @classmethod
    def from_vec(cls, flat, n: int) -> "Derivation":
        return cls(n, Matrix.from_vec(flat, n, n))

    def vec(self) -> Vector:
        return self.matrix.vec()

    def apply(self, v) -> Vector:
        return self.matrix @ v

    def is_derivation_of(self, L: LieAlgebra) -> bool:
        return leibniz_failure(L, self.matrix) is None


@dataclass(frozen=True)
class OuterCertificate:
    derivation: Derivation
    leibniz_checked: bool
    inner_system_inconsistent: bool
    construction_branch: str

    def __post_init__(self):
        if self.construction_branch not in BRANCHES:
            raise ValueError(f"unknown branch {self.construction_branch!r}")

    @property
    def valid(self) -> bool:
        return self.leibniz_checked and self.inner_system_inconsistent


def certify(L: LieAlgebra, d: Matrix, branch: str) -> OuterCertificate:
    """Run the independent checks on ``d`` and wrap the outcome."""
    leibniz_ok, inconsistent = verify.check_outer(L.structure_constants, d.tolist())
    return OuterCertificate(Derivation(L.dim, d), leibniz_ok, inconsistent, branch)


def leibniz_failure(L: LieAlgebra, d: Matrix) -> tuple[int, int] | None:
    """First basis pair (i, j) where ``D[e_i,e_j] != [De_i,e_j] + [e_i,De_j]``."""
    n = L.dim
    cols = [d.column(i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = d @ L.basis_bracket(i, j)
            rhs = tuple(
                a + b
                for a, b in zip(L.bracket(cols[i], L.e(j)), L.bracket(L.e(i), cols[j]))
            )
            if lhs != rhs:
                return i, j
    return None


def leibniz_rows(L: LieAlgebra) -> list[dict[int, Fraction]]:
    """The linear system in the n*n entries of D, one row per (i<j, m)."""
    n = L.dim
    c = L.structure_constants
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            cij = c[i][j]
            for m in range(n):
                row: dict[int, Fraction] = {}
                # D[e_i,e_j] has e_m-coefficient sum_k c_ij^k D[m][k]
                for k, x in enumerate(cij):
                    if x:
                        row[m * n + k] = row.get(m * n + k, 0) + x
                # [D e_i, e_j] contributes sum_p D[p][i] c_pj^m
                for p in range(n):
                    y = c[p][j][m]
                    if y:
                        row[p * n + i] = row.get(p * n + i, 0) - y
                    y = c[i][p][m]
                    if y:
                        row[p * n + j] = row.get(p * n + j, 0) - y
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    return rows


def derivation_space(L: LieAlgebra) -> Subspace:
    return nullspace_sparse(leibniz_rows(L), L.dim * L.dim)


def inner_derivation_space(L: LieAlgebra) -> Subspace:
    return span_of([L.ad_basis(i).vec() for i in range(L.dim)], L.dim * L.dim)


def outer_dimension(L: LieAlgebra) -> int:
    der = derivation_space(L)
    inder = inner_derivation_space(L)
    for i in range(L.dim):
        if not der.contains(L.ad_basis(i).vec()):
            raise InternalInvariantViolation(f"ad({L.labels[i]}) is not a derivation")
    return der.dim - inder.dim


def inner_system(L: LieAlgebra) -> Matrix:
    """Matrix of ``z -> vec(ad(z))``: column l is ``vec(ad(e_l))``."""
    return Matrix.from_columns([L.ad_basis(l).vec() for l in range(L.dim)], L.dim * L.dim)


def is_inner(L: LieAlgebra, d: Derivation | Matrix) -> Vector | None:
    """Some ``z`` with ``ad(z) == D``, or None if ``D`` is outer.

    The answer is unique modulo the center; free coordinates are zero.
    """
    m = d.matrix if isinstance(d, Derivation) else d
    bad = leibniz_failure(L, m)
    if bad is not None:
        i, j = bad
        raise NotADerivation(f"Leibniz rule fails on ({L.labels[i]}, {L.labels[j]})")
    if L.dim == 0:
        return ()
    return solve(inner_system(L), m.vec())


def find_outer_derivation(L: LieAlgebra, branch: str = "generic-scan") -> OuterCertificate | None:
    """First canonical basis vector of Der(L) outside InDer(L), certified.

    Returns None exactly when every derivation is inner.
    """
    inder = inner_derivation_space(L)
    for v in derivation_space(L).vectors():
        if inder.contains(v):
            continue
        cert = certify(L, Matrix.from_vec(v, L.dim, L.dim), branch)
        if not cert.valid:
            raise InternalInvariantViolation(
                "canonical derivation outside InDer failed independent verification"
            )
        return cert
    return None
