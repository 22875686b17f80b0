"""Standard nilpotent families and a seeded generator of random specs.

Only families whose torus has full dimension yield a :class:`MaxRankSpec`.
``heisenberg(m)`` for ``m >= 2`` is kept in the catalog as a nilpotent
algebra (its torus has dimension ``m + 1`` while it has ``2m`` generators),
so :func:`spec_of` refuses it with AlphaNotDerivation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import torus
from .errors import DimensionError, GeneratorExhausted, RankDeficientSelection
from .exactlin import Matrix, rank
from .liecore import LieAlgebra
from .maxrank import MaxRankSpec
from .torus import WeightMatrix

FAMILIES = ("abelian", "heisenberg", "filiform")
_MIN_SIZE = {"abelian": 1, "heisenberg": 1, "filiform": 3}

MAX_ATTEMPTS = 1000


@dataclass(frozen=True, order=True)
class FamilyId:
    kind: str
    size: int

    def __post_init__(self):
        if self.kind not in FAMILIES:
            raise ValueError(f"unknown family {self.kind!r}; expected one of {', '.join(FAMILIES)}")
        if self.size < _MIN_SIZE[self.kind]:
            raise ValueError(f"{self.kind} needs size >= {_MIN_SIZE[self.kind]}")

    def __str__(self) -> str:
        return f"{self.kind}({self.size})"


def _gamma(f: FamilyId) -> tuple[int, int, dict[tuple[int, int, int], Fraction]]:
    """(n, k, gamma) with 0-based indices."""
    one = Fraction(1)
    if f.kind == "abelian":
        return f.size, f.size, {}
    if f.kind == "heisenberg":
        m = f.size
        return 2 * m + 1, 2 * m, {(2 * i, 2 * i + 1, 2 * m): one for i in range(m)}
    n = f.size
    # [e_1, e_i] = e_{i+1} for 2 <= i <= n-1
    return n, 2, {(0, i, i + 1): one for i in range(1, n - 1)}


def nilradical_of(f: FamilyId) -> LieAlgebra:
    """The nilpotent algebra of the family, whether or not it has maximal rank."""
    n, _, gamma = _gamma(f)
    table: dict[tuple[int, int], list[Fraction]] = {}
    for (i, j, t), c in gamma.items():
        table.setdefault((i, j), [Fraction(0)] * n)[t] += c
    return LieAlgebra(n, table)


def spec_of(f: FamilyId) -> MaxRankSpec:
    """Spec with ``s = k`` and identity selection.

    The weights are solved for, not hard-coded: ``t_j`` is the diagonal
    derivation that is 1 on generator ``j`` and 0 on the other generators.
    """
    n, k, gamma = _gamma(f)
    N = nilradical_of(f)
    tv = torus.standard_torus(N, k)
    alpha = WeightMatrix(k, tuple(tuple(t[i] for t in tv) for i in range(k, n)))
    return MaxRankSpec(n, k, gamma, alpha, Matrix.identity(k))


def restrict_selection(spec: MaxRankSpec, rows) -> MaxRankSpec:
    sel = rows if isinstance(rows, Matrix) else Matrix(rows, spec.k)
    if sel.rows > spec.k or rank(sel) != sel.rows:
        raise RankDeficientSelection(f"selection must have full row rank <= k = {spec.k}")
    return spec.with_selection(sel)


def subset_selection(k: int, subset) -> Matrix:
    """Rows ``e_j`` for ``j`` in ``subset``: x_a acts as the standard torus element ``t_j``."""
    return Matrix([[int(j == c) for c in range(k)] for j in subset], k)


def _small_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-10, 10), rng.randint(1, 10))


def random_spec(seed: int, family: FamilyId, s: int) -> MaxRankSpec:
    """Deterministic in ``(seed, family, s)``; redraws until the selection has rank ``s``."""
    base = spec_of(family)
    if not 1 <= s <= base.k:
        raise DimensionError(f"need 1 <= s <= k = {base.k}, got {s}")
    rng = random.Random(f"{seed}:{family}:{s}")
    for _ in range(MAX_ATTEMPTS):
        rows = [[_small_rational(rng) for _ in range(base.k)] for _ in range(s)]
        sel = Matrix(rows, base.k)
        if rank(sel) == s:
            return base.with_selection(sel)
    raise GeneratorExhausted(f"no full-rank selection after {MAX_ATTEMPTS} draws")


def max_rank_families() -> list[FamilyId]:
    """The default corpus of families with maximal rank."""
    return (
        [FamilyId("abelian", n) for n in range(2, 5)]
        + [FamilyId("heisenberg", 1)]
        + [FamilyId("filiform", n) for n in range(4, 7)]
    )


def random_corpus(seed: int, count: int, proper: bool = True) -> list[MaxRankSpec]:
    """``count`` random specs over :func:`max_rank_families`, with ``s < k`` when ``proper``."""
    rng = random.Random(seed)
    fams = max_rank_families()
    out = []
    for idx in range(count):
        f = fams[rng.randrange(len(fams))]
        k = _gamma(f)[1]
        s = rng.randint(1, k - 1 if proper else k)
        out.append(random_spec(seed * 100003 + idx, f, s))
    return out
