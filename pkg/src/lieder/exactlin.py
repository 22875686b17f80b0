"""Exact dense linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`. Matrices are immutable and dense;
vectors are plain tuples of Fractions. Subspaces are stored in reduced
row-echelon form, so two subspaces are equal exactly when their basis
matrices are equal.

Internally, elimination runs on sparse rows (``dict`` column -> value),
which keeps the derivation systems (mostly zeros) cheap to reduce.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError

Vector = tuple  # tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


def rational(x) -> Fraction:
    """Coerce ``x`` to a Fraction. Floats are refused: they are never exact."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        if not _RATIONAL_RE.match(x):
            raise ValueError(f"not a rational literal: {x!r}")
        return Fraction(x.replace(" ", ""))
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def vector(values: Iterable) -> Vector:
    return tuple(rational(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return tuple(v)


def vec_add(u: Sequence, v: Sequence) -> Vector:
    _same_length(u, v)
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> Vector:
    _same_length(u, v)
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v: Sequence) -> Vector:
    c = rational(c)
    return tuple(c * a for a in v)


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


def _same_length(u, v):
    if len(u) != len(v):
        raise DimensionError(f"vector lengths differ: {len(u)} vs {len(v)}")


class Matrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("_entries", "rows", "cols")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        data = tuple(vector(r) for r in entries)
        if cols is None:
            if not data:
                raise DimensionError("column count required for an empty matrix")
            cols = len(data[0])
        for r in data:
            if len(r) != cols:
                raise DimensionError(f"ragged row: expected {cols} entries, got {len(r)}")
        self._entries = data
        self.rows = len(data)
        self.cols = cols

    @classmethod
    def _trusted(cls, data: tuple, cols: int) -> "Matrix":
        m = cls.__new__(cls)
        m._entries = data
        m.rows = len(data)
        m.cols = cols
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._trusted(tuple(zero_vector(cols) for _ in range(rows)), cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._trusted(tuple(unit_vector(n, i) for i in range(n)), n)

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        vals = vector(values)
        n = len(vals)
        rows = []
        for i, v in enumerate(vals):
            r = [Fraction(0)] * n
            r[i] = v
            rows.append(tuple(r))
        return cls._trusted(tuple(rows), n)

    @classmethod
    def from_vec(cls, flat: Sequence, rows: int, cols: int) -> "Matrix":
        """Inverse of :meth:`vec` (row-major)."""
        if len(flat) != rows * cols:
            raise DimensionError(f"expected {rows * cols} entries, got {len(flat)}")
        flat = vector(flat)
        return cls._trusted(tuple(flat[r * cols:(r + 1) * cols] for r in range(rows)), cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        if not columns:
            if nrows is None:
                raise DimensionError("row count required for a matrix with no columns")
            return cls._trusted(tuple(() for _ in range(nrows)), 0)
        return cls(zip(*columns), len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple:
        return self._entries

    def __getitem__(self, key):
        if isinstance(key, tuple):
            r, c = key
            return self._entries[r][c]
        return self._entries[key]

    def row(self, i: int) -> Vector:
        return self._entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._entries)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._entries]

    def vec(self) -> Vector:
        """Row-major flattening."""
        return tuple(x for r in self._entries for x in r)

    @property
    def T(self) -> "Matrix":
        if self.rows == 0:
            return Matrix.zeros(self.cols, 0)
        return Matrix._trusted(tuple(zip(*self._entries)), self.rows)

    def diagonal(self) -> Vector:
        return tuple(self._entries[i][i] for i in range(min(self.rows, self.cols)))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._entries)

    def is_diagonal(self) -> bool:
        return all(
            v == 0 for i, r in enumerate(self._entries) for j, v in enumerate(r) if i != j
        )

    def submatrix(self, rows: range | Sequence[int], cols: range | Sequence[int]) -> "Matrix":
        return Matrix._trusted(
            tuple(tuple(self._entries[i][j] for j in cols) for i in rows), len(cols)
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._entries))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._entries)
        return f"Matrix([{body}])"

    def _check_shape(self, other: "Matrix"):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_shape(other)
        return Matrix._trusted(
            tuple(tuple(a + b if b else a for a, b in zip(r, s)) for r, s in zip(self._entries, other._entries)),
            self.cols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_shape(other)
        return Matrix._trusted(
            tuple(tuple(a - b if b else a for a, b in zip(r, s)) for r, s in zip(self._entries, other._entries)),
            self.cols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._trusted(tuple(tuple(-a for a in r) for r in self._entries), self.cols)

    def __mul__(self, c) -> "Matrix":
        c = rational(c)
        return Matrix._trusted(tuple(tuple(c * a for a in r) for r in self._entries), self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            # row-by-row accumulation that skips zeros; the matrices here are sparse
            rhs = [[(c, b) for c, b in enumerate(r) if b] for r in other._entries]
            out = []
            for r in self._entries:
                acc = [Fraction(0)] * other.cols
                for k, a in enumerate(r):
                    if a:
                        for c, b in rhs[k]:
                            acc[c] += a * b
                out.append(tuple(acc))
            return Matrix._trusted(tuple(out), other.cols)
        v = vector(other)
        if len(v) != self.cols:
            raise DimensionError(f"cannot apply {self.shape} matrix to a vector of length {len(v)}")
        return tuple(_dot(r, v) for r in self._entries)


def _dot(r: Sequence[Fraction], c: Sequence[Fraction]) -> Fraction:
    s = Fraction(0)
    for a, b in zip(r, c):
        if a and b:
            s += a * b
    return s


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


# ---------------------------------------------------------------------------
# elimination on sparse rows

SparseRow = dict  # dict[int, Fraction]


def _reduce_sparse(rows: Iterable[Mapping[int, object]]) -> dict[int, SparseRow]:
    """Gauss-Jordan reduction of sparse rows.

    Returns pivot column -> row, every row normalised (pivot entry 1) and
    zero in every other pivot column. Leading entry of each row is its pivot.
    """
    basis: dict[int, SparseRow] = {}
    for src in rows:
        r: SparseRow = {c: rational(v) for c, v in src.items() if v}
        for p in [c for c in r if c in basis]:
            f = r.pop(p)
            for c, v in basis[p].items():
                if c == p:
                    continue
                nv = r.get(c, 0) - f * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
        if not r:
            continue
        p = min(r)
        inv = 1 / r[p]
        if inv != 1:
            r = {c: v * inv for c, v in r.items()}
        for b in basis.values():
            g = b.pop(p, None)
            if g is None:
                continue
            for c, v in r.items():
                if c == p:
                    continue
                nv = b.get(c, 0) - g * v
                if nv:
                    b[c] = nv
                else:
                    b.pop(c, None)
        basis[p] = r
    return basis


def _dense_rows(m: Matrix) -> list[SparseRow]:
    return [{j: v for j, v in enumerate(r) if v} for r in m.entries]


def _to_dense(basis: dict[int, SparseRow], ncols: int) -> tuple[tuple, list[int]]:
    pivots = sorted(basis)
    rows = []
    for p in pivots:
        r = [Fraction(0)] * ncols
        for c, v in basis[p].items():
            r[c] = v
        rows.append(tuple(r))
    return tuple(rows), pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form with zero rows dropped, and the pivot columns."""
    rows, pivots = _to_dense(_reduce_sparse(_dense_rows(m)), m.cols)
    return Matrix._trusted(rows, m.cols), pivots


def rank(m: Matrix) -> int:
    return len(_reduce_sparse(_dense_rows(m)))


def _kernel_from_reduced(basis: dict[int, SparseRow], ncols: int) -> "Subspace":
    pivots = set(basis)
    free = [c for c in range(ncols) if c not in pivots]
    # column f of the kernel basis: e_f - sum_p R[p][f] e_p
    by_free: dict[int, dict[int, Fraction]] = {f: {f: Fraction(1)} for f in free}
    for p, r in basis.items():
        for c, v in r.items():
            if c != p:
                by_free[c][p] = -v
    return Subspace._from_sparse(by_free.values(), ncols)


def nullspace(m: Matrix) -> "Subspace":
    """Canonical subspace ``{v : m @ v = 0}``."""
    return _kernel_from_reduced(_reduce_sparse(_dense_rows(m)), m.cols)


def nullspace_sparse(rows: Iterable[Mapping[int, object]], ncols: int) -> "Subspace":
    """Like :func:`nullspace` for a system given as sparse rows."""
    return _kernel_from_reduced(_reduce_sparse(rows), ncols)


def solve(a: Matrix, b: Sequence) -> Vector | None:
    """Some ``x`` with ``a @ x == b``, or None when the system is inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    b = vector(b)
    if len(b) != a.rows:
        raise DimensionError(f"right-hand side has length {len(b)}, matrix has {a.rows} rows")
    n = a.cols
    aug = []
    for r, rhs in zip(a.entries, b):
        row = {j: v for j, v in enumerate(r) if v}
        if rhs:
            row[n] = rhs
        aug.append(row)
    basis = _reduce_sparse(aug)
    if n in basis:
        return None
    x = [Fraction(0)] * n
    for p, r in basis.items():
        x[p] = r.get(n, Fraction(0))
    return tuple(x)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise DimensionError("only square matrices are invertible")
    n = m.rows
    aug = [
        {**{j: v for j, v in enumerate(r) if v}, n + i: Fraction(1)}
        for i, r in enumerate(m.entries)
    ]
    basis = _reduce_sparse(aug)
    if any(p >= n for p in basis) or len(basis) < n:
        raise ValueError("matrix is singular")
    rows = []
    for p in range(n):
        r = basis[p]
        rows.append(tuple(r.get(n + j, Fraction(0)) for j in range(n)))
    return Matrix._trusted(tuple(rows), n)


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim, basis stored in RREF (one row per vector)."""

    ambient_dim: int
    basis: Matrix
    pivots: tuple[int, ...]

    @classmethod
    def _from_sparse(cls, rows: Iterable[Mapping[int, object]], ambient_dim: int) -> "Subspace":
        dense, pivots = _to_dense(_reduce_sparse(rows), ambient_dim)
        return cls(ambient_dim, Matrix._trusted(dense, ambient_dim), tuple(pivots))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, Matrix.zeros(0, n), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, Matrix.identity(n), tuple(range(n)))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self) -> list[Vector]:
        return list(self.basis.entries)

    def reduce(self, v: Sequence) -> Vector:
        """Residual of ``v`` after elimination against the basis."""
        v = list(vector(v))
        if len(v) != self.ambient_dim:
            raise DimensionError(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        for p, row in zip(self.pivots, self.basis.entries):
            f = v[p]
            if f:
                for c in range(p, self.ambient_dim):
                    if row[c]:
                        v[c] -= f * row[c]
        return tuple(v)

    def contains(self, v: Sequence) -> bool:
        return is_zero_vector(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.vectors())

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError("ambient dimensions differ")
        return span_of(self.vectors() + other.vectors(), self.ambient_dim)


def span_of(vectors: Iterable[Sequence], ambient_dim: int | None = None) -> Subspace:
    vecs = [vector(v) for v in vectors]
    if ambient_dim is None:
        if not vecs:
            raise DimensionError("ambient dimension required for an empty span")
        ambient_dim = len(vecs[0])
    for v in vecs:
        if len(v) != ambient_dim:
            raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
    return Subspace._from_sparse(({j: x for j, x in enumerate(v) if x} for v in vecs), ambient_dim)


def contains(s: Subspace, v: Sequence) -> bool:
    return s.contains(v)


def subspace_equal(s1: Subspace, s2: Subspace) -> bool:
    if s1.ambient_dim != s2.ambient_dim:
        raise DimensionError("ambient dimensions differ")
    return s1.basis == s2.basis
