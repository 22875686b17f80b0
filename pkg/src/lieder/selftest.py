"""Invariant suite over the catalog, run by ``lieder selftest``."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from . import catalog, dercalc, fileformat, torus
from .errors import AlphaNotDerivation, LiederError
from .exactlin import commutator
from .liecore import LieAlgebra, center, generator_count
from .maxrank import build_nilradical, build_solvable, decompose_ad, verify_theorem

DEFAULT_SEED = 20240601


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


def seed_from_env() -> int:
    raw = os.environ.get("LIEDER_SEED")
    return int(raw) if raw else DEFAULT_SEED


def structural_checks(L: LieAlgebra) -> list[tuple[str, bool]]:
    der = dercalc.derivation_space(L)
    inder = dercalc.inner_derivation_space(L)
    n = L.dim
    anti = all(
        commutator(L.ad_basis(i), L.ad_basis(j)) == -L.ad(L.basis_bracket(i, j))
        for i in range(n)
        for j in range(i + 1, n)
    )
    return [
        ("InDer in Der", der.contains_subspace(inder)),
        ("dim InDer = dim L - dim center", inder.dim == n - center(L).dim),
        ("[ad x, ad y] = -ad [x, y]", anti),
    ]


def _family_checks(f: catalog.FamilyId) -> list[Check]:
    out = []
    spec = catalog.spec_of(f)
    N = build_nilradical(spec)
    out.append(Check(f"{f}: maximal rank", torus.has_max_rank(N)))
    out.append(Check(f"{f}: nilpotent outer derivation", dercalc.find_outer_derivation(N) is not None))
    R = build_solvable(spec)
    rep = verify_theorem(spec)
    out.append(Check(f"{f}: s = k all derivations inner", rep.outer_dim == 0, f"outer {rep.outer_dim}"))
    for name, ok in structural_checks(R):
        out.append(Check(f"{f}: {name}", ok))
    recon = True
    for a in range(spec.s):
        dec = decompose_ad(R, a, spec.n)
        recon &= dec.diagonal_part.matrix + dec.nilpotent_part.matrix == R.ad_basis(spec.n + a)
    out.append(Check(f"{f}: d + d_n = ad(x_a)", recon))
    parsed, _ = fileformat.algebra_from_doc(fileformat.loads(fileformat.dumps(fileformat.algebra_to_doc(R))))
    out.append(Check(f"{f}: file round-trip", parsed == R))
    failures = []
    for s in range(1, spec.k):
        for sub in itertools.combinations(range(spec.k), s):
            sel = catalog.subset_selection(spec.k, sub)
            try:
                rep = verify_theorem(spec.with_selection(sel))
                if rep.proof_gap:
                    failures.append(f"{sub}: {rep.proof_gap}")
            except LiederError as exc:
                failures.append(f"{sub}: {exc}")
    out.append(Check(f"{f}: outer derivation for every proper torus subset", not failures, "; ".join(failures)))
    return out


def run(seed: int | None = None, random_count: int = 10) -> list[Check]:
    seed = seed_from_env() if seed is None else seed
    checks: list[Check] = []
    for f in catalog.max_rank_families():
        try:
            checks.extend(_family_checks(f))
        except LiederError as exc:
            checks.append(Check(f"{f}", False, str(exc)))
    for m in (2, 3):
        f = catalog.FamilyId("heisenberg", m)
        N = catalog.nilradical_of(f)
        checks.append(Check(f"{f}: nilpotent outer derivation", dercalc.find_outer_derivation(N) is not None))
        try:
            catalog.spec_of(f)
            checks.append(Check(f"{f}: rejected as not of maximal rank", False))
        except AlphaNotDerivation:
            rank = torus.diagonal_derivations(N).dim
            checks.append(Check(
                f"{f}: rejected as not of maximal rank", True, f"torus {rank} < k {generator_count(N)}"
            ))
    for idx, spec in enumerate(catalog.random_corpus(seed, random_count)):
        try:
            rep = verify_theorem(spec)
            checks.append(Check(f"random[{idx}] n={spec.n} k={spec.k} s={spec.s}", rep.passed, rep.branch or ""))
        except LiederError as exc:
            checks.append(Check(f"random[{idx}]", False, str(exc)))
    return checks
