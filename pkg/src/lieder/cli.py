"""Command-line front end.

Exit codes: 0 success / verified certificate, 1 input or validation error,
2 the proof's candidate failed verification (a fallback certificate is
written when one exists).
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__, catalog, dercalc, fileformat, selftest, verify
from .errors import JacobiViolation, LiederError, ParseError, PreconditionViolation, ProofGapDiagnostic
from .exactlin import Matrix
from .liecore import center, format_combination, is_nilpotent, is_solvable
from .maxrank import build_solvable, construct_outer

EXIT_OK, EXIT_INPUT, EXIT_GAP = 0, 1, 2

log = logging.getLogger("lieder")


def _read(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(str(exc), path) from None
    try:
        return fileformat.loads(text)
    except ParseError as exc:
        raise ParseError(str(exc), path) from None


def _write(out: str | None, doc: dict) -> None:
    text = fileformat.dumps(doc)
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _format_matrix(m: Matrix) -> str:
    return "\n".join("  [" + ", ".join(str(x) for x in row) + "]" for row in m.entries)


def cmd_check(args) -> int:
    try:
        L, _ = fileformat.algebra_from_doc(_read(args.file))
    except JacobiViolation as exc:
        print(f"Jacobi: FAILED {exc}", file=sys.stderr)
        return EXIT_INPUT
    der = dercalc.derivation_space(L)
    inder = dercalc.inner_derivation_space(L)
    outer = dercalc.outer_dimension(L)
    print(f"dim {L.dim}")
    print("Jacobi: ok")
    print(f"solvable: {is_solvable(L)}, nilpotent: {is_nilpotent(L)}")
    print(f"center dim {center(L).dim}")
    print(f"Der {der.dim}, InDer {inder.dim}, outer {outer}")
    if outer:
        cert = dercalc.find_outer_derivation(L)
        print("outer witness (column i = image of basis vector i):")
        print(_format_matrix(cert.derivation.matrix))
        for i in range(L.dim):
            img = cert.derivation.matrix.column(i)
            if any(img):
                print(f"  {L.labels[i]} -> {format_combination(img, L.labels)}")
    return EXIT_OK


def cmd_build(args) -> int:
    spec = fileformat.spec_from_doc(_read(args.spec))
    R = build_solvable(spec)
    _write(args.output, fileformat.algebra_to_doc(R, spec.n))
    return EXIT_OK


def reverify(doc: dict) -> bool:
    """Fresh Leibniz expansion and inner-system solve on a certificate document."""
    if doc.get("derivation") is None:
        return False
    c = fileformat.constants_from_doc(doc["algebra"])
    d = [[fileformat.parse_rational(x, "derivation") for x in row] for row in doc["derivation"]]
    n = len(c)
    if len(d) != n or any(len(row) != n for row in d):
        return False
    leibniz, inconsistent = verify.check_outer(c, d)
    return leibniz and inconsistent


def cmd_certify(args) -> int:
    doc = _read(args.input)
    if fileformat.is_spec_doc(doc):
        spec = fileformat.spec_from_doc(doc)
        if spec.s >= spec.k:
            print(f"error: s must be < k (got s = {spec.s}, k = {spec.k})", file=sys.stderr)
            return EXIT_INPUT
        R, n = build_solvable(spec), spec.n
    else:
        R, n = fileformat.algebra_from_doc(doc)
        if args.nil_dim is not None:
            n = args.nil_dim
        if n is None:
            print("error: algebra input needs nilradical_dim in the file or --nil-dim", file=sys.stderr)
            return EXIT_INPUT
    try:
        cert, trace = construct_outer(R, n)
    except PreconditionViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ProofGapDiagnostic as gap:
        diagnostic = {
            "branch": gap.branch,
            "failed_check": gap.failed_check,
            "candidate": None if gap.candidate is None else fileformat.matrix_doc(gap.candidate),
            "fallback_found": gap.fallback is not None,
        }
        out = fileformat.certificate_to_doc(R, n, gap.fallback, gap.trace, "generic-scan", diagnostic)
        _write(args.output, out)
        print(f"proof gap: {gap}", file=sys.stderr)
        return EXIT_GAP
    out = fileformat.certificate_to_doc(R, n, cert, trace, trace.branch)
    _write(args.output, out)
    if not (cert.valid and reverify(out)):
        print("error: certificate failed independent re-verification", file=sys.stderr)
        return EXIT_GAP
    print(f"verified outer derivation, branch {trace.branch}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    doc = _read(args.certificate)
    if doc.get("format") != fileformat.CERT_FORMAT:
        raise ParseError("not a certificate document", args.certificate)
    ok = reverify(doc)
    print("certificate verified" if ok else "certificate REJECTED")
    return EXIT_OK if ok else EXIT_INPUT


def cmd_catalog(args) -> int:
    try:
        fam = catalog.FamilyId(args.family, args.size)
    except ValueError as exc:
        raise ParseError(str(exc), "family") from None
    spec = catalog.spec_of(fam)
    if args.s is not None:
        if not 1 <= args.s <= spec.k:
            raise ParseError(f"--s must be between 1 and k = {spec.k}", "--s")
        if args.seed is not None:
            spec = catalog.random_spec(args.seed, fam, args.s)
        else:
            spec = catalog.restrict_selection(spec, catalog.subset_selection(spec.k, range(args.s)))
    _write(args.output, fileformat.spec_to_doc(spec))
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = selftest.run(args.seed, args.random)
    for c in results:
        line = f"{'PASS' if c.ok else 'FAIL'}  {c.name}"
        print(line + (f"  ({c.detail})" if c.detail else ""))
    failed = sum(not c.ok for c in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_INPUT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lieder", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="report Der, InDer and outer dimension of an algebra file")
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("build", help="build R = N + Q from a spec file")
    b.add_argument("spec")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_build)

    ce = sub.add_parser("certify", help="construct and verify an outer derivation")
    ce.add_argument("input", help="spec file, or algebra file with nilradical_dim")
    ce.add_argument("-o", "--output")
    ce.add_argument("--nil-dim", type=int, help="dimension of the nilradical block e_1..e_n")
    ce.set_defaults(func=cmd_certify)

    v = sub.add_parser("verify", help="re-verify a certificate file")
    v.add_argument("certificate")
    v.set_defaults(func=cmd_verify)

    ca = sub.add_parser("catalog", help="write the spec of a catalog family")
    ca.add_argument("family", choices=catalog.FAMILIES)
    ca.add_argument("size", type=int)
    ca.add_argument("--s", type=int, help="complement dimension (default k)")
    ca.add_argument("--seed", type=int, help="draw a random full-rank selection instead of t_1..t_s")
    ca.add_argument("-o", "--output")
    ca.set_defaults(func=cmd_catalog)

    st = sub.add_parser("selftest", help="run the invariant suite over the catalog")
    st.add_argument("--seed", type=int, default=None, help="overrides LIEDER_SEED")
    st.add_argument("--random", type=int, default=10, help="number of random specs")
    st.set_defaults(func=cmd_selftest)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except LiederError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
