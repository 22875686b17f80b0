"""JSON documents for algebras, specs and certificates.

Indices are 1-based in every document and 0-based in memory; the
conversion happens here and nowhere else. Rationals are written as strings
(``"3"``, ``"-1/2"``); JSON integers are accepted on input, floats never.
Matrices are lists of rows, and row ``r`` column ``c`` of a derivation is
the coefficient of ``e_r`` in ``D(e_c)``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from . import __version__
from .dercalc import OuterCertificate
from .errors import ParseError
from .exactlin import Matrix, rational
from .liecore import LieAlgebra
from .maxrank import MaxRankSpec, ProofTrace
from .torus import WeightMatrix

CERT_FORMAT = "lieder-certificate"


def fmt(x: Fraction) -> str:
    return str(x)


def matrix_doc(m: Matrix) -> list[list[str]]:
    return [[fmt(x) for x in row] for row in m.entries]


def _vector_doc(v) -> list[str]:
    return [fmt(x) for x in v]


# -- parsing helpers ----------------------------------------------------------


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise ParseError("top-level value must be an object")
    return doc


def _field(doc: dict, key: str, where: str, default: Any = ...):
    if key not in doc:
        if default is ...:
            raise ParseError(f"missing field '{key}'", where or None)
        return default
    return doc[key]


def _int(x, where: str, lo: int | None = None, hi: int | None = None) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"expected an integer, got {x!r}", where)
    if lo is not None and x < lo or hi is not None and x > hi:
        raise ParseError(f"{x} out of range [{lo}, {hi}]", where)
    return x


def parse_rational(x, where: str) -> Fraction:
    if isinstance(x, float):
        raise ParseError(f"floats are not allowed, write {x!r} as a string 'p/q'", where)
    try:
        return rational(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(str(exc), where) from None


def _list(x, where: str) -> list:
    if not isinstance(x, list):
        raise ParseError(f"expected a list, got {type(x).__name__}", where)
    return x


def _matrix(x, where: str, cols: int | None = None) -> Matrix:
    rows = _list(x, where)
    out = []
    for r, row in enumerate(rows):
        row = _list(row, f"{where}[{r}]")
        out.append([parse_rational(v, f"{where}[{r}][{c}]") for c, v in enumerate(row)])
    width = cols if cols is not None else (len(out[0]) if out else 0)
    for r, row in enumerate(out):
        if len(row) != width:
            raise ParseError(f"row has {len(row)} entries, expected {width}", f"{where}[{r}]")
    return Matrix(out, width)


def _records(doc: dict, key: str, dim: int, target_min: int = 1) -> dict[tuple[int, int], dict[int, Fraction]]:
    """Bracket records ``{i, j, terms: [{k, c}]}`` -> 0-based ``{(i, j): {k: c}}``."""
    out: dict[tuple[int, int], dict[int, Fraction]] = {}
    for r, rec in enumerate(_list(_field(doc, key, ""), key)):
        where = f"{key}[{r}]"
        if not isinstance(rec, dict):
            raise ParseError("expected an object", where)
        i = _int(_field(rec, "i", where), f"{where}.i", 1, dim)
        j = _int(_field(rec, "j", where), f"{where}.j", 1, dim)
        if not i < j:
            raise ParseError(f"need i < j, got i={i}, j={j}", where)
        if (i - 1, j - 1) in out:
            raise ParseError(f"duplicate record for ({i}, {j})", where)
        terms: dict[int, Fraction] = {}
        for t, term in enumerate(_list(_field(rec, "terms", where), f"{where}.terms")):
            tw = f"{where}.terms[{t}]"
            if not isinstance(term, dict):
                raise ParseError("expected an object", tw)
            kk = _int(_field(term, "k", tw), f"{tw}.k", target_min, dim)
            c = parse_rational(_field(term, "c", tw), f"{tw}.c")
            terms[kk - 1] = terms.get(kk - 1, Fraction(0)) + c
        out[(i - 1, j - 1)] = terms
    return out


def _bracket_records(table) -> list[dict]:
    recs = []
    for (i, j), v in sorted(table.items()):
        terms = [{"k": kk + 1, "c": fmt(c)} for kk, c in enumerate(v) if c]
        if terms:
            recs.append({"i": i + 1, "j": j + 1, "terms": terms})
    return recs


# -- algebras -----------------------------------------------------------------


def algebra_to_doc(L: LieAlgebra, nil_dim: int | None = None) -> dict:
    doc: dict[str, Any] = {"dim": L.dim, "labels": list(L.labels), "brackets": _bracket_records(L.table)}
    if nil_dim is not None:
        doc["nilradical_dim"] = nil_dim
    return doc


def algebra_from_doc(doc: dict) -> tuple[LieAlgebra, int | None]:
    """Parse an algebra document; raises ParseError or JacobiViolation."""
    dim = _int(_field(doc, "dim", ""), "dim", 0)
    labels = doc.get("labels")
    if labels is not None:
        labels = _list(labels, "labels")
        if len(labels) != dim or not all(isinstance(x, str) for x in labels):
            raise ParseError(f"expected {dim} string labels", "labels")
    entries = _records(doc, "brackets", dim)
    nil_dim = doc.get("nilradical_dim")
    if nil_dim is not None:
        nil_dim = _int(nil_dim, "nilradical_dim", 0, dim)
    return LieAlgebra.from_table(dim, entries, labels), nil_dim


def constants_from_doc(doc: dict) -> list[list[list[Fraction]]]:
    """Dense ``c[i][j][k]`` straight from the records, with no validation beyond parsing."""
    dim = _int(_field(doc, "dim", ""), "dim", 0)
    c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for (i, j), terms in _records(doc, "brackets", dim).items():
        for kk, x in terms.items():
            c[i][j][kk] += x
            c[j][i][kk] -= x
    return c


# -- specs ----------------------------------------------------------------------


def spec_to_doc(spec: MaxRankSpec) -> dict:
    table: dict[tuple[int, int], list[Fraction]] = {}
    for (i, j, t), c in spec.gamma.items():
        table.setdefault((i, j), [Fraction(0)] * spec.n)[t] += c
    return {
        "n": spec.n,
        "k": spec.k,
        "labels": list(spec.labels),
        "gamma": _bracket_records(table),
        "alpha": [_vector_doc(r) for r in spec.alpha.rows],
        "selection": matrix_doc(spec.selection),
    }


def spec_from_doc(doc: dict) -> MaxRankSpec:
    n = _int(_field(doc, "n", ""), "n", 1)
    k = _int(_field(doc, "k", ""), "k", 1, n)
    entries = _records(doc, "gamma", n, target_min=k + 1)
    gamma = {(i, j, t): c for (i, j), terms in entries.items() for t, c in terms.items()}
    alpha = _matrix(_field(doc, "alpha", ""), "alpha", k) if n > k else Matrix.zeros(0, k)
    if alpha.rows != n - k:
        raise ParseError(f"expected {n - k} rows (one per non-generator), got {alpha.rows}", "alpha")
    selection = _matrix(_field(doc, "selection", ""), "selection", k)
    labels = doc.get("labels")
    if labels is not None:
        labels = tuple(_list(labels, "labels"))
    return MaxRankSpec(n, k, gamma, WeightMatrix(k, alpha.entries), selection, labels)


def is_spec_doc(doc: dict) -> bool:
    return "gamma" in doc


# -- certificates -------------------------------------------------------------


def _trace_doc(trace: ProofTrace | None) -> dict | None:
    if trace is None:
        return None
    return {
        "decompositions": [
            {
                "generator": d.generator_index + 1,
                "diagonal": _vector_doc(d.diagonal_part.matrix.diagonal()),
                "nilpotent": matrix_doc(d.nilpotent_part.matrix),
            }
            for d in trace.decompositions
        ],
        "z": [_vector_doc(z) for z in trace.z],
        "x_prime": [_vector_doc(x) for x in trace.x_prime],
        "failed_generator": None if trace.failed_index is None else trace.failed_index + 1,
        "chosen": None if trace.chosen is None else matrix_doc(trace.chosen.matrix),
        "rewritten_algebra": None if trace.rewritten is None else algebra_to_doc(trace.rewritten),
        "transcript": [{"check": name, "ok": ok} for name, ok in trace.transcript],
    }


def certificate_to_doc(
    L: LieAlgebra,
    nil_dim: int | None,
    cert: OuterCertificate | None,
    trace: ProofTrace | None,
    branch: str,
    diagnostic: dict | None = None,
) -> dict:
    doc: dict[str, Any] = {
        "format": CERT_FORMAT,
        "tool_version": __version__,
        "branch": branch,
        "algebra": algebra_to_doc(L, nil_dim),
        "derivation": None if cert is None else matrix_doc(cert.derivation.matrix),
        "derivation_branch": None if cert is None else cert.construction_branch,
        "trace": _trace_doc(trace),
        "checks": {
            "leibniz": bool(cert and cert.leibniz_checked),
            "inner_system_inconsistent": bool(cert and cert.inner_system_inconsistent),
        },
    }
    if diagnostic is not None:
        doc["diagnostic"] = diagnostic
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
