"""Solvable extensions of maximal-rank nilradicals and their outer derivations.

``R = N + Q`` with ``N`` nilpotent of maximal rank (torus dimension equal to
its generator count ``k``) and ``Q = span(x_1..x_s)`` acting on ``N`` through
``s`` independent torus elements. For ``s < k`` an outer derivation is
constructed along the lines of the classical argument:

* ``center(R) != 0``: a solvable algebra with nontrivial center cannot
  have only inner derivations, so a generic scan of ``Der(R)`` succeeds.
* otherwise split each ``ad(x_a) = d_a + n_a`` into diagonal and
  nilpotent parts, absorb ``n_a = ad(z_a)`` with ``z_a`` in ``N`` by passing
  to ``x_a' = x_a - z_a``, and take a torus element of ``N`` outside the
  span of the ``ad(x_a')``, extended by zero on ``Q``.

Every candidate is checked by :mod:`lieder.verify` before it is emitted.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import dercalc, torus
from .dercalc import Derivation, OuterCertificate
from .errors import (
    AlphaNotDerivation,
    DimensionError,
    NotADerivation,
    NotNilpotent,
    NotTriangular,
    PreconditionViolation,
    ProofGapDiagnostic,
    RankDeficientSelection,
    TheoremViolation,
    WrongGeneratorCount,
)
from .exactlin import Matrix, Vector, inverse, rank, rational, span_of, unit_vector
from .liecore import (
    LieAlgebra,
    center,
    change_basis,
    generator_count,
    is_nilpotent,
    leading_subalgebra,
)
from .torus import WeightMatrix

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class MaxRankSpec:
    """Data of ``R = N + Q``.

    ``gamma`` maps 0-based ``(i, j, t)`` with ``i < j`` to the coefficient of
    ``e_t`` in ``[e_i, e_j]``; only ``t >= k`` may occur. ``alpha`` holds the
    weights of the non-generators under the standard torus ``t_1..t_k``.
    Row ``a`` of ``selection`` gives the torus element by which ``x_a`` acts.

    Non-generators are put in filtration order on construction, so every
    bracket lands on a strictly later basis vector.
    """

    n: int
    k: int
    gamma: Mapping[tuple[int, int, int], Fraction]
    alpha: WeightMatrix
    selection: Matrix
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        n, k = self.n, self.k
        if not 1 <= k <= n:
            raise DimensionError(f"need 1 <= k <= n, got n={n}, k={k}")
        gamma: dict[tuple[int, int, int], Fraction] = {}
        for (i, j, t), c in self.gamma.items():
            c = rational(c)
            if not (0 <= i < n and 0 <= j < n and 0 <= t < n):
                raise DimensionError(f"gamma index out of range: ({i + 1}, {j + 1}, {t + 1})")
            if i == j:
                raise DimensionError(f"gamma has a diagonal entry ({i + 1}, {i + 1})")
            if t < k:
                raise DimensionError(
                    f"gamma_({i + 1},{j + 1})^{t + 1}: brackets must land on non-generators (t > k)"
                )
            if i > j:
                i, j, c = j, i, -c
            if c:
                gamma[(i, j, t)] = gamma.get((i, j, t), Fraction(0)) + c
        gamma = {key: c for key, c in gamma.items() if c}
        alpha = self.alpha
        if not isinstance(alpha, WeightMatrix):
            alpha = WeightMatrix(k, tuple(tuple(rational(x) for x in r) for r in alpha))
        if alpha.k != k or len(alpha.rows) != n - k or any(len(r) != k for r in alpha.rows):
            raise DimensionError(f"alpha must be {n - k} rows of {k} weights")
        if any(x < 0 for r in alpha.rows for x in r):
            warnings.warn("negative weights in alpha; generator-count weights are nonnegative", stacklevel=3)
        elif any(x.denominator != 1 for r in alpha.rows for x in r):
            warnings.warn("non-integral weights in alpha", stacklevel=3)
        sel = self.selection if isinstance(self.selection, Matrix) else Matrix(self.selection, k)
        if sel.cols != k:
            raise DimensionError(f"selection rows must have {k} entries")
        if not 1 <= sel.rows <= k:
            raise DimensionError(f"need 1 <= s <= k, got s={sel.rows}, k={k}")
        if rank(sel) != sel.rows:
            raise RankDeficientSelection(f"selection has rank {rank(sel)} < s = {sel.rows}")
        labels = self.labels
        if labels is None:
            labels = tuple(f"e{i + 1}" for i in range(n))
        elif len(labels) != n:
            raise DimensionError(f"{len(labels)} labels for n = {n}")
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "selection", sel)
        object.__setattr__(self, "labels", tuple(labels))
        self._reorder()

    def _reorder(self):
        order = _filtration_order(self.n, self.k, self.gamma)
        if order == list(range(self.n)):
            return
        log.info("reordering non-generators by filtration depth: %s", order)
        pos = {old: new for new, old in enumerate(order)}
        gamma = {}
        for (i, j, t), c in self.gamma.items():
            a, b = pos[i], pos[j]
            if a > b:
                a, b, c = b, a, -c
            gamma[(a, b, pos[t])] = c
        rows = tuple(self.alpha.rows[old - self.k] for old in order[self.k:])
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "alpha", WeightMatrix(self.k, rows))
        object.__setattr__(self, "labels", tuple(self.labels[old] for old in order))

    @property
    def s(self) -> int:
        return self.selection.rows

    def __eq__(self, other):
        if not isinstance(other, MaxRankSpec):
            return NotImplemented
        return (
            self.n == other.n
            and self.k == other.k
            and self.gamma == other.gamma
            and self.alpha == other.alpha
            and self.selection == other.selection
        )

    def with_selection(self, rows) -> "MaxRankSpec":
        return MaxRankSpec(self.n, self.k, self.gamma, self.alpha, rows, self.labels)

    def acting_weights(self) -> list[Vector]:
        """``w_a = sum_j selection[a][j] * t_j``, the diagonal by which ``x_a`` acts on N."""
        tv = self.alpha.torus_vectors()
        out = []
        for a in range(self.s):
            w = [Fraction(0)] * self.n
            for j, c in enumerate(self.selection.row(a)):
                if c:
                    for i in range(self.n):
                        w[i] += c * tv[j][i]
            out.append(tuple(w))
        return out


def _filtration_order(n: int, k: int, gamma) -> list[int]:
    """Generators first, then non-generators sorted by filtration depth.

    Depth of a generator is 1; a basis vector produced by ``[e_i, e_j]``
    sits at least at depth ``depth(i) + depth(j)``.
    """
    producers: dict[int, list[tuple[int, int]]] = {}
    for i, j, t in gamma:
        producers.setdefault(t, []).append((i, j))
    depth: dict[int, int] = {g: 1 for g in range(k)}
    visiting: set[int] = set()

    def visit(t: int) -> int:
        if t in depth:
            return depth[t]
        if t in visiting:
            raise DimensionError("gamma is not graded: brackets cannot be ordered by filtration depth")
        visiting.add(t)
        # a non-generator no bracket produces is caught later by the generator count
        d = max((visit(i) + visit(j) for i, j in producers.get(t, ())), default=2)
        visiting.discard(t)
        depth[t] = d
        return d

    for t in range(k, n):
        visit(t)
    return list(range(k)) + sorted(range(k, n), key=lambda t: (depth[t], t))


# ---------------------------------------------------------------------------
# builders


def _nilradical_table(spec: MaxRankSpec) -> dict[tuple[int, int], list[Fraction]]:
    table: dict[tuple[int, int], list[Fraction]] = {}
    for (i, j, t), c in spec.gamma.items():
        v = table.setdefault((i, j), [Fraction(0)] * spec.n)
        v[t] += c
    return table


def build_nilradical(spec: MaxRankSpec) -> LieAlgebra:
    """N from the gamma table, with the nilpotency, generator and torus checks."""
    N = LieAlgebra(spec.n, _nilradical_table(spec), spec.labels)
    if not is_nilpotent(N):
        raise NotNilpotent("the gamma table does not define a nilpotent algebra")
    k = generator_count(N)
    if k != spec.k:
        raise WrongGeneratorCount(f"gamma table has {k} generators, spec says k = {spec.k}")
    diag = torus.diagonal_derivations(N)
    for j, t in enumerate(spec.alpha.torus_vectors()):
        if not diag.contains(t):
            raise AlphaNotDerivation(j)
    return N


def build_solvable(spec: MaxRankSpec) -> LieAlgebra:
    """R on the basis ``e_1..e_n, x_1..x_s`` with ``[e_i, x_a] = w_a(i) e_i`` and ``[Q, Q] = 0``."""
    build_nilradical(spec)
    n, s = spec.n, spec.s
    dim = n + s
    table: dict[tuple[int, int], list[Fraction]] = {}
    for (i, j), v in _nilradical_table(spec).items():
        table[(i, j)] = list(v) + [Fraction(0)] * s
    for a, w in enumerate(spec.acting_weights()):
        for i, c in enumerate(w):
            if c:
                v = [Fraction(0)] * dim
                v[i] = c
                table[(i, n + a)] = v
    labels = spec.labels + tuple(f"x{a + 1}" for a in range(s))
    return LieAlgebra(dim, table, labels)


def verify_nilradical_maximality(spec: MaxRankSpec) -> bool:
    """No nonzero combination of the ``x_a`` acts nilpotently, so N is the whole nilradical.

    Each ``x_a`` acts diagonally with weights ``w_a``, and the generator block
    of ``w_a`` is row ``a`` of the selection, so this is a rank test.
    """
    return rank(spec.selection) == spec.s


# ---------------------------------------------------------------------------
# the constructive proof


@dataclass(frozen=True)
class AdDecomposition:
    generator_index: int
    diagonal_part: Derivation
    nilpotent_part: Derivation


def decompose_ad(R: LieAlgebra, a: int, nil_dim: int) -> AdDecomposition:
    """Split ``ad(x_a)`` into its diagonal and nilpotent parts.

    ``x_a`` is basis vector ``nil_dim + a``. On N the matrix must be
    triangular for the basis order (``[e_i, x_a]`` only involves ``e_i`` and
    later vectors), and ``[x_b, x_a]`` must lie in N.
    """
    n = nil_dim
    idx = n + a
    if not n <= idx < R.dim:
        raise DimensionError(f"x{a + 1} is not a basis vector of the complement")
    m = R.ad_basis(idx)
    for c in range(R.dim):
        for r in range(R.dim):
            v = m[r, c]
            if not v:
                continue
            if c < n and (r < c or r >= n):
                raise NotTriangular(r, c)
            if c >= n and r >= n:
                raise NotTriangular(r, c)
    d = Matrix.diag(m.diagonal())
    return AdDecomposition(a, Derivation(R.dim, d), Derivation(R.dim, m - d))


@dataclass(frozen=True)
class Absorption:
    """Outcome of absorbing the nilpotent parts into the complement.

    On success ``algebra`` is R rewritten on ``e_1..e_n, x_1'..x_s'`` and
    ``failed_index`` is None; otherwise ``failed_index`` is the first ``a``
    whose nilpotent part is not inner in N.
    """

    z: tuple[Vector, ...]
    x_prime: tuple[Vector, ...]
    basis_change: Matrix | None
    algebra: LieAlgebra | None
    failed_index: int | None = None

    @property
    def ok(self) -> bool:
        return self.failed_index is None


def absorb_nilpotent_parts(
    R: LieAlgebra, decomps: Sequence[AdDecomposition], nil_dim: int
) -> Absorption:
    n = nil_dim
    N = leading_subalgebra(R, n)
    cen = center(N)
    zs: list[Vector] = []
    block = range(n)
    for dec in decomps:
        nil_part = dec.nilpotent_part.matrix.submatrix(block, block)
        try:
            z = dercalc.is_inner(N, nil_part)
        except NotADerivation:
            z = None
        if z is None:
            return Absorption(tuple(zs), (), None, None, dec.generator_index)
        zs.append(cen.reduce(z))
    cols = [list(unit_vector(R.dim, c)) for c in range(R.dim)]
    x_prime = []
    for dec, z in zip(decomps, zs):
        col = cols[n + dec.generator_index]
        for i, zi in enumerate(z):
            col[i] -= zi
        x_prime.append(tuple(col))
    p = Matrix.from_columns(cols, R.dim)
    labels = R.labels[:n] + tuple(
        lbl + "'" if c - n in {d.generator_index for d in decomps} else lbl
        for c, lbl in enumerate(R.labels[n:], start=n)
    )
    return Absorption(tuple(zs), tuple(x_prime), p, change_basis(R, p, labels))


@dataclass(frozen=True)
class ProofTrace:
    branch: str
    nil_dim: int
    decompositions: tuple[AdDecomposition, ...] = ()
    z: tuple[Vector, ...] = ()
    x_prime: tuple[Vector, ...] = ()
    failed_index: int | None = None
    rewritten: LieAlgebra | None = None
    chosen: Derivation | None = None
    transcript: tuple[tuple[str, bool], ...] = field(default=())


def _ad_restricted(L: LieAlgebra, idx: int, n: int) -> Matrix:
    return L.ad_basis(idx).submatrix(range(n), range(n))


def construct_outer(R: LieAlgebra, nil_dim: int) -> tuple[OuterCertificate, ProofTrace]:
    """Build and verify an outer derivation of R, whose nilradical is ``e_1..e_nil_dim``.

    Raises PreconditionViolation when ``s >= k`` and ProofGapDiagnostic when
    the prescribed candidate does not survive verification (the diagnostic
    carries the generic fallback certificate).
    """
    n = nil_dim
    s = R.dim - n
    N = leading_subalgebra(R, n)
    k = generator_count(N)
    if s >= k:
        raise PreconditionViolation(f"s must be < k (got s = {s}, k = {k})")

    if center(R).dim > 0:
        cert = dercalc.find_outer_derivation(R, branch="case2-center")
        trace = ProofTrace("case2-center", n, transcript=(("center nonzero", True),))
        if cert is None:
            raise ProofGapDiagnostic("case2-center", None, "existence of an outer derivation", None, trace)
        return cert, trace

    decomps = tuple(decompose_ad(R, a, n) for a in range(s))
    absorbed = absorb_nilpotent_parts(R, decomps, n)

    if not absorbed.ok:
        a0 = absorbed.failed_index
        cand = decomps[a0].diagonal_part.matrix
        cert = dercalc.certify(R, cand, "case1-early-exit")
        trace = ProofTrace(
            "case1-early-exit",
            n,
            decomps,
            absorbed.z,
            failed_index=a0,
            chosen=Derivation(R.dim, cand),
            transcript=(
                ("center zero", True),
                (f"nilpotent part of ad(x{a0 + 1}) inner in N", False),
                ("candidate satisfies Leibniz", cert.leibniz_checked),
                ("candidate not inner", cert.inner_system_inconsistent),
            ),
        )
        if not cert.valid:
            failed = "leibniz" if not cert.leibniz_checked else "non-innerness"
            raise ProofGapDiagnostic("case1-early-exit", cand, failed, dercalc.find_outer_derivation(R), trace)
        return cert, trace

    Rp = absorbed.algebra
    checks: list[tuple[str, bool]] = [("center zero", True)]
    restricted = [_ad_restricted(Rp, n + a, n) for a in range(s)]
    checks.append(("ad(x_a') diagonal on N", all(m.is_diagonal() for m in restricted)))
    q_abelian = all(
        not any(Rp.basis_bracket(n + a, n + b)) for a in range(s) for b in range(a + 1, s)
    )
    checks.append(("[Q', Q'] = 0", q_abelian))

    tor = torus.diagonal_derivations(N)
    spanned = span_of([m.diagonal() for m in restricted], n)
    candidates: list[Vector] = []
    try:
        candidates.extend(torus.standard_torus(N, k))
    except AlphaNotDerivation:
        pass
    candidates.extend(tor.vectors())
    pick = next((t for t in candidates if not spanned.contains(t)), None)

    def _gap(candidate, failed, extra=()):
        trace = ProofTrace(
            "case1-torus", n, decomps, absorbed.z, absorbed.x_prime,
            rewritten=Rp, chosen=None if candidate is None else Derivation(R.dim, candidate),
            transcript=tuple(checks) + tuple(extra),
        )
        return ProofGapDiagnostic("case1-torus", candidate, failed, dercalc.find_outer_derivation(R), trace)

    if pick is None:
        raise _gap(None, "torus contained in span of ad(x_a')")

    d_prime = Matrix.diag(tuple(pick) + (Fraction(0),) * s)
    checks.append(("d'(Q) = 0", True))
    checks.append((
        "[ad(x_a'), d'] = 0",
        all((Rp.ad_basis(n + a) @ d_prime - d_prime @ Rp.ad_basis(n + a)).is_zero() for a in range(s)),
    ))
    in_new_basis = dercalc.certify(Rp, d_prime, "case1-torus")
    checks.append(("d' satisfies Leibniz on R'", in_new_basis.leibniz_checked))
    checks.append(("d' not inner in R'", in_new_basis.inner_system_inconsistent))
    p = absorbed.basis_change
    d_orig = p @ d_prime @ inverse(p)
    cert = dercalc.certify(R, d_orig, "case1-torus")
    checks.append(("d' satisfies Leibniz on R", cert.leibniz_checked))
    checks.append(("d' not inner in R", cert.inner_system_inconsistent))
    chosen = Derivation(R.dim, d_prime)
    if not (cert.valid and in_new_basis.valid):
        raise _gap(d_prime, "leibniz" if not cert.leibniz_checked else "non-innerness")
    trace = ProofTrace(
        "case1-torus", n, decomps, absorbed.z, absorbed.x_prime,
        rewritten=Rp, chosen=chosen, transcript=tuple(checks),
    )
    return cert, trace


def certify_spec(spec: MaxRankSpec) -> tuple[OuterCertificate, ProofTrace]:
    if spec.s >= spec.k:
        raise PreconditionViolation(f"s must be < k (got s = {spec.s}, k = {spec.k})")
    return construct_outer(build_solvable(spec), spec.n)


@dataclass(frozen=True)
class TheoremReport:
    n: int
    k: int
    s: int
    dim_der: int
    dim_inder: int
    outer_dim: int
    branch: str | None
    certificate: OuterCertificate | None
    proof_gap: str | None = None

    @property
    def passed(self) -> bool:
        if self.s < self.k:
            return self.outer_dim >= 1 and self.certificate is not None and self.certificate.valid
        return self.outer_dim == 0


def verify_theorem(spec: MaxRankSpec) -> TheoremReport:
    """Check the outer-derivation theorem (s < k) or all-inner boundary case (s = k) on one spec."""
    R = build_solvable(spec)
    der = dercalc.derivation_space(R)
    inder = dercalc.inner_derivation_space(R)
    outer = dercalc.outer_dimension(R)
    cert, branch, gap = None, None, None
    if spec.s < spec.k:
        try:
            cert, trace = construct_outer(R, spec.n)
            branch = trace.branch
        except ProofGapDiagnostic as diag:
            cert, branch, gap = diag.fallback, diag.branch, str(diag)
    report = TheoremReport(spec.n, spec.k, spec.s, der.dim, inder.dim, outer, branch, cert, gap)
    if not report.passed:
        raise TheoremViolation(
            f"n={spec.n}, k={spec.k}, s={spec.s}: outer dimension {outer}"
            + (", no valid certificate" if spec.s < spec.k else ", expected 0")
        )
    return report
