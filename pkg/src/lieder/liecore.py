"""Lie algebras given by structure constants.

Adjoint convention: ``ad(x)`` is the matrix of ``w -> [w, x]`` acting on
column vectors, so column ``i`` of ``ad(x)`` holds the coordinates of
``[e_i, x]``. With this convention the bracket table ``[e_i, x_j] = a e_i``
makes ``ad(x_j)`` diagonal, and ``ad(x) @ ad(y) - ad(y) @ ad(x) = -ad([x, y])``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import AntisymmetryViolation, DimensionError, JacobiViolation, NotNilpotent
from .exactlin import (
    Matrix,
    Subspace,
    Vector,
    inverse,
    is_zero_vector,
    nullspace_sparse,
    rational,
    span_of,
    unit_vector,
    vector,
    zero_vector,
)


class LieAlgebra:
    """A finite-dimensional Lie algebra over Q.

    The table maps ``(i, j)`` with ``i < j`` (0-based) to the coordinate
    vector of ``[e_i, e_j]``; only nonzero brackets are kept. Instances are
    validated for Jacobi on construction and are immutable afterwards.
    """

    __slots__ = ("dim", "_table", "labels", "_ad_cache")

    def __init__(
        self,
        dim: int,
        table: Mapping[tuple[int, int], Sequence],
        labels: Sequence[str] | None = None,
        *,
        check: bool = True,
    ):
        if dim < 0:
            raise DimensionError("dimension must be nonnegative")
        clean: dict[tuple[int, int], Vector] = {}
        for (i, j), v in table.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise DimensionError(f"bracket index out of range: ({i + 1}, {j + 1}) in dimension {dim}")
            if i >= j:
                raise DimensionError(f"bracket entries must have i < j, got ({i + 1}, {j + 1})")
            v = vector(v)
            if len(v) != dim:
                raise DimensionError(f"bracket [e{i + 1}, e{j + 1}] has {len(v)} coordinates, expected {dim}")
            if not is_zero_vector(v):
                clean[(i, j)] = v
        self.dim = dim
        self._table = clean
        if labels is None:
            labels = [f"e{i + 1}" for i in range(dim)]
        if len(labels) != dim:
            raise DimensionError(f"{len(labels)} labels for dimension {dim}")
        self.labels = tuple(labels)
        self._ad_cache: dict[int, Matrix] = {}
        if check:
            self.check_jacobi()

    # -- construction ------------------------------------------------------

    @classmethod
    def from_table(
        cls,
        dim: int,
        entries: Mapping[tuple[int, int], Mapping[int, object]],
        labels: Sequence[str] | None = None,
    ) -> "LieAlgebra":
        """Build from sparse entries ``{(i, j): {k: c}}`` meaning ``[e_i, e_j] = sum c e_k``.

        Indices are 0-based and every key must have ``i < j``.
        """
        table = {}
        for (i, j), terms in entries.items():
            v = [Fraction(0)] * dim
            for k, c in terms.items():
                if not 0 <= k < dim:
                    raise DimensionError(f"bracket result index {k + 1} out of range for dimension {dim}")
                v[k] += rational(c)
            if (i, j) in table:
                raise DimensionError(f"duplicate bracket entry ({i + 1}, {j + 1})")
            table[(i, j)] = v
        return cls(dim, table, labels)

    @classmethod
    def from_structure_constants(cls, c: Sequence[Sequence[Sequence]], labels=None) -> "LieAlgebra":
        """Build from a dense array ``c[i][j][k]``; antisymmetry is checked."""
        n = len(c)
        table = {}
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if rational(c[i][j][k]) != -rational(c[j][i][k]):
                        raise AntisymmetryViolation(
                            f"c[{i + 1}][{j + 1}][{k + 1}] != -c[{j + 1}][{i + 1}][{k + 1}]"
                        )
        for i, j in combinations(range(n), 2):
            table[(i, j)] = [c[i][j][k] for k in range(n)]
        return cls(n, table, labels)

    @classmethod
    def abelian(cls, n: int) -> "LieAlgebra":
        return cls(n, {})

    # -- access ------------------------------------------------------------

    @property
    def table(self) -> Mapping[tuple[int, int], Vector]:
        return dict(self._table)

    def basis_bracket(self, i: int, j: int) -> Vector:
        if i < j:
            return self._table.get((i, j)) or zero_vector(self.dim)
        if i > j:
            v = self._table.get((j, i))
            return tuple(-x for x in v) if v else zero_vector(self.dim)
        return zero_vector(self.dim)

    @property
    def structure_constants(self) -> tuple:
        """Dense ``c[i][j][k]``."""
        n = self.dim
        return tuple(tuple(self.basis_bracket(i, j) for j in range(n)) for i in range(n))

    def nonzero_brackets(self) -> Iterable[tuple[int, int, Vector]]:
        for (i, j), v in sorted(self._table.items()):
            yield i, j, v

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self._table == other._table

    def __hash__(self) -> int:
        return hash((self.dim, tuple(sorted(self._table.items()))))

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, brackets={len(self._table)})"

    def describe(self) -> str:
        lines = []
        for i, j, v in self.nonzero_brackets():
            rhs = format_combination(v, self.labels)
            lines.append(f"[{self.labels[i]}, {self.labels[j]}] = {rhs}")
        return "\n".join(lines) if lines else "(abelian)"

    # -- validation --------------------------------------------------------

    def check_jacobi(self) -> None:
        n = self.dim
        for i, j, l in combinations(range(n), 3):
            r = jacobi_residual(self, i, j, l)
            if not is_zero_vector(r):
                raise JacobiViolation(i, j, l, r)

    # -- operations --------------------------------------------------------

    def _vec(self, u) -> Vector:
        u = vector(u)
        if len(u) != self.dim:
            raise DimensionError(f"vector of length {len(u)} in a Lie algebra of dimension {self.dim}")
        return u

    def bracket(self, u: Sequence, v: Sequence) -> Vector:
        u, v = self._vec(u), self._vec(v)
        out = [Fraction(0)] * self.dim
        nu = [(i, a) for i, a in enumerate(u) if a]
        nv = [(j, b) for j, b in enumerate(v) if b]
        for i, a in nu:
            for j, b in nv:
                if i == j:
                    continue
                w = self._table.get((i, j) if i < j else (j, i))
                if w is None:
                    continue
                c = a * b if i < j else -a * b
                for k, x in enumerate(w):
                    if x:
                        out[k] += c * x
        return tuple(out)

    def ad_basis(self, i: int) -> Matrix:
        m = self._ad_cache.get(i)
        if m is None:
            m = Matrix.from_columns([self.basis_bracket(w, i) for w in range(self.dim)], self.dim)
            self._ad_cache[i] = m
        return m

    def ad(self, x: Sequence) -> Matrix:
        """Matrix of ``w -> [w, x]``; column ``i`` is ``[e_i, x]``."""
        x = self._vec(x)
        n = self.dim
        out = [[Fraction(0)] * n for _ in range(n)]
        for j, c in enumerate(x):
            if not c:
                continue
            for r, row in enumerate(self.ad_basis(j).entries):
                for col, a in enumerate(row):
                    if a:
                        out[r][col] += c * a
        return Matrix(out, n)

    def element(self, coords: Mapping[int, object]) -> Vector:
        v = [Fraction(0)] * self.dim
        for k, c in coords.items():
            v[k] = rational(c)
        return tuple(v)

    def e(self, i: int) -> Vector:
        return unit_vector(self.dim, i)


def format_combination(v: Sequence, labels: Sequence[str]) -> str:
    parts = []
    for k, c in enumerate(v):
        if not c:
            continue
        if c == 1:
            parts.append(labels[k])
        elif c == -1:
            parts.append(f"-{labels[k]}")
        else:
            parts.append(f"{c}*{labels[k]}")
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def jacobi_residual(L: LieAlgebra, i: int, j: int, l: int) -> Vector:
    """``[[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j]``."""
    e = L.e
    terms = (
        L.bracket(L.basis_bracket(i, j), e(l)),
        L.bracket(L.basis_bracket(j, l), e(i)),
        L.bracket(L.basis_bracket(l, i), e(j)),
    )
    return tuple(sum(t) for t in zip(*terms))


def center(L: LieAlgebra) -> Subspace:
    """``{z : [z, e_i] = 0 for all i}``, the kernel of the stacked ``ad(e_i)``."""
    rows = []
    for i in range(L.dim):
        m = L.ad_basis(i)
        rows.extend({j: v for j, v in enumerate(r) if v} for r in m.entries)
    return nullspace_sparse(rows, L.dim)


def product(L: LieAlgebra, s: Subspace, t: Subspace) -> Subspace:
    """``[S, T]``: the span of brackets of basis representatives."""
    return span_of(
        [L.bracket(u, v) for u in s.vectors() for v in t.vectors()], L.dim
    )


@dataclass(frozen=True)
class SeriesReport:
    """Terms of a derived or lower central series, starting at ``L``.

    ``stabilized`` is True when the series became constant at a nonzero
    term instead of reaching zero.
    """

    terms: tuple[Subspace, ...]
    stabilized: bool

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(t.dim for t in self.terms)

    @property
    def reaches_zero(self) -> bool:
        return self.terms[-1].dim == 0


def _series(L: LieAlgebra, step) -> SeriesReport:
    terms = [Subspace.full(L.dim)]
    while terms[-1].dim > 0:
        nxt = step(terms[-1])
        if nxt.dim == terms[-1].dim:
            return SeriesReport(tuple(terms), True)
        terms.append(nxt)
    return SeriesReport(tuple(terms), False)


def derived_series(L: LieAlgebra) -> SeriesReport:
    return _series(L, lambda s: product(L, s, s))


def lower_central_series(L: LieAlgebra) -> SeriesReport:
    full = Subspace.full(L.dim)
    return _series(L, lambda s: product(L, full, s))


def is_solvable(L: LieAlgebra) -> bool:
    return derived_series(L).reaches_zero


def is_nilpotent(L: LieAlgebra) -> bool:
    return lower_central_series(L).reaches_zero


def derived_algebra(L: LieAlgebra) -> Subspace:
    full = Subspace.full(L.dim)
    return product(L, full, full)


def generator_count(N: LieAlgebra) -> int:
    """``dim N - dim [N, N]`` for a nilpotent ``N``."""
    if not is_nilpotent(N):
        raise NotNilpotent("generator count is defined here for nilpotent algebras only")
    return N.dim - derived_algebra(N).dim


def is_ideal(L: LieAlgebra, s: Subspace) -> bool:
    return s.contains_subspace(product(L, Subspace.full(L.dim), s))


def change_basis(L: LieAlgebra, p: Matrix, labels: Sequence[str] | None = None) -> LieAlgebra:
    """Rewrite ``L`` in the basis whose i-th vector is column ``i`` of ``p``."""
    if p.shape != (L.dim, L.dim):
        raise DimensionError(f"basis change must be {L.dim}x{L.dim}")
    pinv = inverse(p)
    cols = [p.column(i) for i in range(L.dim)]
    table = {}
    for i, j in combinations(range(L.dim), 2):
        w = L.bracket(cols[i], cols[j])
        if not is_zero_vector(w):
            table[(i, j)] = pinv @ w
    return LieAlgebra(L.dim, table, labels if labels is not None else L.labels)


def leading_subalgebra(L: LieAlgebra, n: int) -> LieAlgebra:
    """The subalgebra spanned by ``e_1..e_n``; fails if it is not closed."""
    table = {}
    for (i, j), v in L.table.items():
        if i < n and j < n:
            if any(v[n:]):
                raise DimensionError(
                    f"[{L.labels[i]}, {L.labels[j]}] leaves the span of the first {n} basis vectors"
                )
            table[(i, j)] = v[:n]
    return LieAlgebra(n, table, L.labels[:n], check=False)
