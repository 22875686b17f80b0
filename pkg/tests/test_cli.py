import json
from fractions import Fraction

import pytest

from lieder import cli, fileformat
from lieder.catalog import FamilyId, nilradical_of, spec_of
from lieder.errors import JacobiViolation, ParseError
from lieder.liecore import LieAlgebra
from lieder.maxrank import build_solvable


def write(path, doc):
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


H3_DOC = {"dim": 3, "brackets": [{"i": 1, "j": 2, "terms": [{"k": 3, "c": "1"}]}]}


def test_rationals_are_canonical_strings():
    L = LieAlgebra.from_table(3, {(0, 1): {2: Fraction(-6, 4)}, (0, 2): {}})
    doc = fileformat.algebra_to_doc(L)
    assert doc["brackets"] == [{"i": 1, "j": 2, "terms": [{"k": 3, "c": "-3/2"}]}]
    L2, _ = fileformat.algebra_from_doc({"dim": 2, "brackets": [{"i": 1, "j": 2, "terms": [{"k": 1, "c": 4}]}]})
    assert fileformat.algebra_to_doc(L2)["brackets"][0]["terms"][0]["c"] == "4"


@pytest.mark.parametrize(
    "doc, where",
    [
        ({"dim": 2, "brackets": [{"i": 2, "j": 1, "terms": []}]}, "brackets[0]"),
        ({"dim": 2, "brackets": [{"i": 1, "j": 2, "terms": [{"k": 3, "c": "1"}]}]}, "brackets[0].terms[0].k"),
        ({"dim": 2, "brackets": [{"i": 1, "j": 2, "terms": [{"k": 1, "c": 0.5}]}]}, "brackets[0].terms[0].c"),
        ({"dim": 2, "brackets": [{"i": 1, "j": 2, "terms": [{"k": 1, "c": "x"}]}]}, "brackets[0].terms[0].c"),
        ({"brackets": []}, None),
    ],
)
def test_parse_errors_point_at_field(doc, where):
    with pytest.raises(ParseError) as exc:
        fileformat.algebra_from_doc(doc)
    assert exc.value.where == where


def test_json_syntax_error_has_line():
    with pytest.raises(ParseError) as exc:
        fileformat.loads('{\n "dim": 3,\n oops }')
    assert "line 3" in str(exc.value)


def test_jacobi_violation_from_file():
    doc = {"dim": 3, "brackets": [
        {"i": 1, "j": 2, "terms": [{"k": 1, "c": "1"}]},
        {"i": 1, "j": 3, "terms": [{"k": 2, "c": "1"}]},
    ]}
    with pytest.raises(JacobiViolation):
        fileformat.algebra_from_doc(doc)


def test_spec_roundtrip():
    spec = spec_of(FamilyId("filiform", 5)).with_selection([[Fraction(1, 2), Fraction(-3)]])
    doc = json.loads(fileformat.dumps(fileformat.spec_to_doc(spec)))
    assert fileformat.spec_from_doc(doc) == spec


def test_algebra_roundtrip_catalog():
    for f in [FamilyId("heisenberg", 3), FamilyId("filiform", 6), FamilyId("abelian", 2)]:
        N = nilradical_of(f)
        back, _ = fileformat.algebra_from_doc(fileformat.loads(fileformat.dumps(fileformat.algebra_to_doc(N))))
        assert back == N and back.structure_constants == N.structure_constants


def test_check_h3(tmp_path, capsys):
    assert cli.main(["check", write(tmp_path / "h3.json", H3_DOC)]) == 0
    out = capsys.readouterr().out
    assert "Der 6, InDer 2, outer 4" in out
    assert "outer witness" in out


def test_check_abelian(tmp_path, capsys):
    assert cli.main(["check", write(tmp_path / "a.json", {"dim": 2, "brackets": []})]) == 0
    assert "Der 4, InDer 0" in capsys.readouterr().out


def test_check_jacobi_failure(tmp_path, capsys):
    doc = {"dim": 3, "brackets": [
        {"i": 1, "j": 2, "terms": [{"k": 1, "c": "1"}]},
        {"i": 1, "j": 3, "terms": [{"k": 2, "c": "1"}]},
    ]}
    assert cli.main(["check", write(tmp_path / "bad.json", doc)]) == 1
    assert "(e1, e2, e3)" in capsys.readouterr().err


def test_check_parse_failure(tmp_path, capsys):
    p = tmp_path / "broken.json"
    p.write_text("{ not json", encoding="utf-8")
    assert cli.main(["check", str(p)]) == 1
    assert "line 1" in capsys.readouterr().err


def test_build_theorem_table(tmp_path):
    spec_path = tmp_path / "h.json"
    assert cli.main(["catalog", "heisenberg", "1", "-o", str(spec_path)]) == 0
    out = tmp_path / "r.json"
    assert cli.main(["build", str(spec_path), "-o", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["nilradical_dim"] == 3
    assert doc["labels"] == ["e1", "e2", "e3", "x1", "x2"]
    assert doc["brackets"] == [
        {"i": 1, "j": 2, "terms": [{"k": 3, "c": "1"}]},
        {"i": 1, "j": 4, "terms": [{"k": 1, "c": "1"}]},
        {"i": 2, "j": 5, "terms": [{"k": 2, "c": "1"}]},
        {"i": 3, "j": 4, "terms": [{"k": 3, "c": "1"}]},
        {"i": 3, "j": 5, "terms": [{"k": 3, "c": "1"}]},
    ]


def test_certify_h3_s1(tmp_path):
    spec_path = tmp_path / "h.json"
    cli.main(["catalog", "heisenberg", "1", "--s", "1", "-o", str(spec_path)])
    cert = tmp_path / "c.json"
    assert cli.main(["certify", str(spec_path), "-o", str(cert)]) == 0
    doc = json.loads(cert.read_text())
    assert doc["branch"] == "case1-torus"
    assert doc["derivation"] == [["0", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "0"]]
    assert doc["checks"] == {"leibniz": True, "inner_system_inconsistent": True}
    assert doc["tool_version"]
    assert cli.main(["verify", str(cert)]) == 0


def test_certify_s_equals_k(tmp_path, capsys):
    spec_path = tmp_path / "h.json"
    cli.main(["catalog", "heisenberg", "1", "-o", str(spec_path)])
    assert cli.main(["certify", str(spec_path)]) == 1
    assert "s must be < k" in capsys.readouterr().err


def test_certify_proof_gap(tmp_path, gap_alg):
    p = write(tmp_path / "g.json", fileformat.algebra_to_doc(gap_alg, 4))
    cert = tmp_path / "c.json"
    assert cli.main(["certify", p, "-o", str(cert)]) == 2
    doc = json.loads(cert.read_text())
    assert doc["diagnostic"]["failed_check"] == "leibniz"
    assert doc["diagnostic"]["fallback_found"]
    assert doc["checks"] == {"leibniz": True, "inner_system_inconsistent": True}
    assert cli.main(["verify", str(cert)]) == 0


def test_certify_algebra_needs_nil_dim(tmp_path, early_exit_alg):
    p = write(tmp_path / "a.json", fileformat.algebra_to_doc(early_exit_alg))
    assert cli.main(["certify", p]) == 1
    assert cli.main(["certify", p, "--nil-dim", "2", "-o", str(tmp_path / "c.json")]) == 0


def test_verify_rejects_tampered(tmp_path):
    spec_path = tmp_path / "h.json"
    cli.main(["catalog", "filiform", "4", "--s", "1", "-o", str(spec_path)])
    cert = tmp_path / "c.json"
    assert cli.main(["certify", str(spec_path), "-o", str(cert)]) == 0
    doc = json.loads(cert.read_text())
    doc["derivation"][0][0] = "5"
    cert.write_text(json.dumps(doc))
    assert cli.main(["verify", str(cert)]) == 1


def test_catalog_rejects_non_max_rank(tmp_path, capsys):
    assert cli.main(["catalog", "heisenberg", "2", "-o", str(tmp_path / "x.json")]) == 1
    assert "t1" in capsys.readouterr().err


def test_catalog_random_selection(tmp_path):
    out = tmp_path / "r.json"
    assert cli.main(["catalog", "abelian", "3", "--s", "2", "--seed", "5", "-o", str(out)]) == 0
    assert len(json.loads(out.read_text())["selection"]) == 2


def test_selftest_uses_env_seed(monkeypatch, capsys):
    monkeypatch.setenv("LIEDER_SEED", "99")
    assert cli.main(["selftest", "--random", "3"]) == 0
    out = capsys.readouterr().out
    assert "checks passed" in out and "FAIL" not in out


def test_build_output_matches_builder(tmp_path):
    spec = spec_of(FamilyId("filiform", 4)).with_selection([[1, 1]])
    p = write(tmp_path / "s.json", fileformat.spec_to_doc(spec))
    out = tmp_path / "r.json"
    cli.main(["build", p, "-o", str(out)])
    R, n = fileformat.algebra_from_doc(json.loads(out.read_text()))
    assert R == build_solvable(spec) and n == 4
