import pytest

from lieder.catalog import (
    FamilyId,
    max_rank_families,
    nilradical_of,
    random_corpus,
    random_spec,
    restrict_selection,
    spec_of,
    subset_selection,
)
from lieder.errors import AlphaNotDerivation, RankDeficientSelection
from lieder.exactlin import Matrix, rank
from lieder.maxrank import build_nilradical, build_solvable
from lieder.torus import diagonal_derivations, has_max_rank


def test_family_id_validation():
    with pytest.raises(ValueError):
        FamilyId("filiform", 2)
    with pytest.raises(ValueError):
        FamilyId("lie", 3)


def test_heisenberg_1_is_h3(h3):
    spec = spec_of(FamilyId("heisenberg", 1))
    assert (spec.n, spec.k, spec.s) == (3, 2, 2)
    assert spec.alpha.rows == ((1, 1),)
    assert build_nilradical(spec) == h3


def test_abelian_3():
    spec = spec_of(FamilyId("abelian", 3))
    assert (spec.n, spec.k) == (3, 3) and spec.gamma == {} and spec.alpha.rows == ()


def test_filiform_alpha_formula():
    for n in range(3, 8):
        spec = spec_of(FamilyId("filiform", n))
        assert spec.k == 2
        assert spec.alpha.rows == tuple((i - 2, 1) for i in range(3, n + 1))


def test_filiform_4_is_f4(f4):
    assert build_nilradical(spec_of(FamilyId("filiform", 4))) == f4


@pytest.mark.parametrize("m", [2, 3])
def test_heisenberg_higher_is_not_max_rank(m):
    N = nilradical_of(FamilyId("heisenberg", m))
    assert N.dim == 2 * m + 1
    assert diagonal_derivations(N).dim == m + 1
    assert not has_max_rank(N)
    with pytest.raises(AlphaNotDerivation):
        spec_of(FamilyId("heisenberg", m))


@pytest.mark.parametrize("f", max_rank_families() + [FamilyId("abelian", 1), FamilyId("filiform", 3)])
def test_catalog_specs_validate(f):
    spec = spec_of(f)
    N = build_nilradical(spec)
    assert has_max_rank(N)
    assert build_solvable(spec).dim == spec.n + spec.k


def test_restrict_selection():
    spec = spec_of(FamilyId("heisenberg", 1))
    r = restrict_selection(spec, [[1, 0]])
    assert r.s == 1 and r.selection == Matrix([[1, 0]])
    assert restrict_selection(spec, Matrix.identity(2)) == spec
    assert restrict_selection(spec, [[1, 1]]).s == 1
    with pytest.raises(RankDeficientSelection):
        restrict_selection(spec, [[1, 1], [2, 2]])


def test_subset_selection():
    assert subset_selection(3, (0, 2)) == Matrix([[1, 0, 0], [0, 0, 1]])


def test_random_spec_deterministic_and_full_rank():
    a = random_spec(1, FamilyId("heisenberg", 1), 1)
    b = random_spec(1, FamilyId("heisenberg", 1), 1)
    assert a == b and a.s == 1 and rank(a.selection) == 1
    for x in a.selection.row(0):
        assert abs(x.numerator) <= 10 and x.denominator <= 10
    c = random_spec(2, FamilyId("filiform", 5), 1)
    assert c.s == 1 < c.k == 2
    assert random_spec(3, FamilyId("abelian", 4), 3) != random_spec(4, FamilyId("abelian", 4), 3)


def test_random_corpus_is_proper():
    specs = random_corpus(11, 20)
    assert len(specs) == 20
    assert all(s.s < s.k for s in specs)
    assert [s.selection for s in specs] == [s.selection for s in random_corpus(11, 20)]
