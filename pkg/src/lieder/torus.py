"""Diagonal derivations and weights of a nilpotent algebra in an adapted basis.

An adapted basis lists the k generators first and every bracket lands in
the span of ``e_{k+1}..e_n``. In such a basis the diagonal derivations
realise a torus of N, and N has maximal rank when that torus has
dimension k. Nothing here tries to find an adapted basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import AlphaNotDerivation, NotADerivation, NotNormalized
from .exactlin import Matrix, Subspace, Vector, nullspace_sparse, solve, vector
from .liecore import LieAlgebra, generator_count


@dataclass(frozen=True)
class WeightMatrix:
    """``rows[i - k][j]`` is the weight of non-generator ``e_i`` under torus element ``t_j``."""

    k: int
    rows: tuple[tuple[Fraction, ...], ...]

    @property
    def n(self) -> int:
        return self.k + len(self.rows)

    def torus_vector(self, j: int) -> Vector:
        """Diagonal of the standard torus element ``t_j``."""
        head = tuple(Fraction(int(g == j)) for g in range(self.k))
        return head + tuple(r[j] for r in self.rows)

    def torus_vectors(self) -> list[Vector]:
        return [self.torus_vector(j) for j in range(self.k)]


def diagonal_rows(N: LieAlgebra) -> list[dict[int, Fraction]]:
    """Leibniz restricted to ``D = diag(w)``: ``w_t = w_i + w_j`` whenever ``[e_i,e_j]`` has an ``e_t`` term."""
    rows = []
    for i, j, v in N.nonzero_brackets():
        for t, c in enumerate(v):
            if not c:
                continue
            row: dict[int, Fraction] = {}
            for idx, coeff in ((t, 1), (i, -1), (j, -1)):
                row[idx] = row.get(idx, 0) + coeff
            row = {a: Fraction(b) for a, b in row.items() if b}
            if row:
                rows.append(row)
    return rows


def diagonal_derivations(N: LieAlgebra) -> Subspace:
    """Diagonals ``w`` with ``diag(w)`` a derivation, as a subspace of Q^n."""
    return nullspace_sparse(diagonal_rows(N), N.dim)


def has_max_rank(N: LieAlgebra) -> bool:
    return diagonal_derivations(N).dim == generator_count(N)


def is_adapted(N: LieAlgebra, k: int) -> bool:
    return all(not any(v[:k]) for _, _, v in N.nonzero_brackets())


def standard_torus(N: LieAlgebra, k: int | None = None) -> list[Vector]:
    """The diagonal derivations ``t_1..t_k`` with ``t_j`` equal to 1 on generator j, 0 on the others.

    Raises AlphaNotDerivation(j) when no diagonal derivation has that
    generator block, which is exactly when N (in this basis) is not of
    maximal rank.
    """
    if k is None:
        k = generator_count(N)
    tor = diagonal_derivations(N)
    basis = tor.vectors()
    # unknown combination coefficients a_r; generator block of sum a_r b_r must be e_j
    head = Matrix.from_columns([b[:k] for b in basis], k) if basis else None
    out = []
    for j in range(k):
        target = tuple(Fraction(int(g == j)) for g in range(k))
        a = solve(head, target) if head is not None else None
        if a is None:
            raise AlphaNotDerivation(j, "no diagonal derivation has this generator block")
        t = [Fraction(0)] * N.dim
        for coeff, b in zip(a, basis):
            if coeff:
                for idx, x in enumerate(b):
                    t[idx] += coeff * x
        out.append(tuple(t))
    return out


def weights_of(N: LieAlgebra, torus_basis: Sequence[Sequence]) -> WeightMatrix:
    k = generator_count(N)
    tor = diagonal_derivations(N)
    vecs = [vector(t) for t in torus_basis]
    for j, t in enumerate(vecs):
        if len(t) != N.dim:
            raise NotNormalized(f"torus vector {j + 1} has length {len(t)}, expected {N.dim}")
        if any(t[g] != int(g == j) for g in range(k)):
            raise NotNormalized(f"torus vector {j + 1} is not 1 on generator {j + 1} and 0 on the others")
        if not tor.contains(t):
            raise NotADerivation(f"diag of torus vector {j + 1} is not a derivation")
    if len(vecs) != k:
        raise NotNormalized(f"expected {k} torus vectors, got {len(vecs)}")
    rows = tuple(tuple(t[i] for t in vecs) for i in range(k, N.dim))
    return WeightMatrix(k, rows)
