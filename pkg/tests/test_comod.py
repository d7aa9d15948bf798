import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from comodkit.coalg import validate_coalgebra
from comodkit.comod import (
    Comodule,
    ComoduleMap,
    decompose,
    direct_sum,
    dual_comodule,
    find_isomorphism,
    hom_comodule,
    hom_space,
    indecomposables,
    injective_hull,
    is_injective,
    is_projective,
    module_to_comodule,
    projective_cover,
    quotient_comodule,
    regular_comodule,
    socle_and_simples,
    structure,
    subcomodule,
    top_multiplicities,
    trivial_comodule,
)
from comodkit.corpus import build, build_matrix, parse_spec, random_coalgebra
from comodkit.errors import ValidationError
from comodkit.linalg import QQ, Matrix, Subspace

import oracle

CORPUS = ["sweedler", "matrix:n=2", "matrix:n=3", "group:n=3", "taft:n=2", "taft:n=3,p=7,q=2",
          "serial-qf:dims=1-2", "serial-qf:dims=1-2-1", "random:seed=0,dim=4", "random:seed=3,dim=6"]


def coalgebra(spec):
    obj = build(parse_spec(spec))
    return getattr(obj, "base", obj)


def corpus_objects(C):
    st_ = structure(C)
    return [regular_comodule(C, "right")] + list(st_.simples) + list(st_.injectives) + list(st_.projectives)


def divided_power_coalgebra():
    # basis 1, x with Δ1 = 1 (x) 1, Δx = x (x) 1 + 1 (x) x: dual to k[x]/(x^2)
    return validate_coalgebra(QQ, 2, [(0, 0, 0, 1), (1, 1, 0, 1), (1, 0, 1, 1)], [1, 0])


# ---------------------------------------------------------------- examples


def test_comodule_axioms_are_checked():
    C = coalgebra("sweedler")
    R = regular_comodule(C, "right")
    bad = Matrix.identity(QQ, 4 * 4).select_cols(range(4))
    with pytest.raises(ValidationError):
        Comodule.from_rho(C, "right", bad)
    assert Comodule.from_rho(C, "right", R.rho).dim == 4


def test_trivial_hom_is_one_dimensional():
    H = build(parse_spec("sweedler"))
    k = H.unit_comodule("right")
    assert hom_space(k, k).dim == 1


def test_hom_simple_into_regular_is_dual():
    for spec in CORPUS:
        C = coalgebra(spec)
        R = regular_comodule(C, "right")
        for S in structure(C).simples:
            assert hom_space(S, R).dim == S.dim


def test_schur():
    for spec in CORPUS:
        simples = structure(coalgebra(spec)).simples
        for i, S in enumerate(simples):
            for j, T in enumerate(simples):
                assert hom_space(S, T).dim == (1 if i == j else 0)


def test_dual_of_trivial():
    H = build(parse_spec("sweedler"))
    k = H.unit_comodule("right")
    d = dual_comodule(k)
    assert d.side == "left" and d.dim == 1
    assert find_isomorphism(d, H.unit_comodule("left")) is not None


def test_dual_of_matrix_injective():
    C = build_matrix(2)
    E = structure(C).injectives[0]
    d = dual_comodule(E)
    assert d.side == "left" and d.dim == 2


def test_module_to_comodule_regular():
    for spec in ["sweedler", "serial-qf:dims=1-2"]:
        C = coalgebra(spec)
        M = module_to_comodule(C, C.left_harpoon_basis, "right")
        assert find_isomorphism(M, regular_comodule(C, "right")) is not None


def test_module_to_comodule_character():
    C = coalgebra("group:n=3")
    g = 1
    M = module_to_comodule(C, [Matrix.from_dense(QQ, [[1 if a == g else 0]]) for a in range(3)], "right")
    assert M.coaction_terms() == [[(0, g, 1)]]


def test_module_over_sweedler_dual_is_rational():
    C = coalgebra("sweedler")
    R = regular_comodule(C, "right")
    soc = socle_and_simples(R)[0]
    Q, _ = quotient_comodule(R, soc)
    back = module_to_comodule(C, [Q.action(C.basis_vector(a)) for a in range(4)], "right")
    assert find_isomorphism(back, Q) is not None


def test_socle_semisimple():
    C = build_matrix(2)
    R = regular_comodule(C, "right")
    soc, dec = socle_and_simples(R)
    assert soc.dim == 4 and dec.multiplicities == [2]


def test_socle_divided_power():
    C = divided_power_coalgebra()
    soc, dec = socle_and_simples(regular_comodule(C, "right"))
    assert soc.dim == 1 and dec.multiplicities == [1]


def test_socle_sweedler():
    C = coalgebra("sweedler")
    soc, dec = socle_and_simples(regular_comodule(C, "right"))
    assert soc.dim == 2 and len(dec.simples) == 2 and dec.multiplicities == [1, 1]


def test_hulls_and_covers_cosemisimple():
    C = build_matrix(2)
    S = structure(C).simples[0]
    E, emb = injective_hull(S)
    P, surj = projective_cover(S)
    assert E.dim == P.dim == S.dim == 2
    assert emb.is_iso() and surj.is_iso()


def test_sweedler_hull_and_cover():
    H = build(parse_spec("sweedler"))
    k = H.unit_comodule("right")
    E, emb = injective_hull(k)
    P, surj = projective_cover(k)
    assert E.dim == 2 and P.dim == 2
    assert emb.is_injective() and emb.is_morphism()
    assert surj.is_surjective() and surj.is_morphism()
    assert any(find_isomorphism(P, E2) for E2 in structure(H.base).injectives)


def test_serial_qf_projective_is_injective_of_other_dimension():
    C = coalgebra("serial-qf:dims=1-2")
    st_ = structure(C)
    dims = [S.dim for S in st_.simples]
    for k, P in enumerate(st_.projectives):
        j = next(j for j, E in enumerate(st_.injectives) if find_isomorphism(P, E) is not None)
        assert dims[j] != dims[k]


def test_regular_is_injective():
    for spec in CORPUS:
        C = coalgebra(spec)
        assert is_injective(regular_comodule(C, "right"))


def test_trivial_not_projective_over_sweedler():
    H = build(parse_spec("sweedler"))
    res = is_projective(H.unit_comodule("right"))
    assert not res and res.failing_simple is not None


def test_simples_over_cosemisimple_are_projective_and_injective():
    for spec in ["matrix:n=3", "group:n=4"]:
        for S in structure(coalgebra(spec)).simples:
            assert is_projective(S) and is_injective(S)


def test_structure_frozen_dimensions():
    # oracle-derived: simple dimensions and hull dimensions per corpus coalgebra
    expected = {
        "sweedler": ([1, 1], [2, 2]),
        "matrix:n=2": ([2], [2]),
        "taft:n=3,p=7,q=2": ([1, 1, 1], [3, 3, 3]),
        "serial-qf:dims=1-2": ([2, 1], [3, 3]),
        "serial-qf:dims=1-2-1": ([1, 2, 1], [3, 3, 2]),
    }
    for spec, (simples, injectives) in expected.items():
        st_ = structure(coalgebra(spec))
        assert [S.dim for S in st_.simples] == simples
        assert [E.dim for E in st_.injectives] == injectives


def test_decompose_direct_sum():
    C = coalgebra("sweedler")
    st_ = structure(C)
    M = direct_sum([st_.simples[0], st_.injectives[1], st_.simples[1]])
    parts = decompose(M)
    assert sorted(S.dim for S, _, _ in parts) == [1, 1, 2]


def test_trivial_comodule_from_unit():
    H = build(parse_spec("group:n=3"))
    k = trivial_comodule(H.base, H.unit)
    assert k.dim == 1 and hom_space(k, H.unit_comodule("right")).dim == 1


# ---------------------------------------------------------------- properties

spec_st = st.sampled_from(CORPUS)
random_st = st.tuples(st.integers(0, 300), st.integers(1, 6))


@settings(max_examples=30, deadline=None)
@given(st.one_of(spec_st.map(coalgebra), random_st.map(lambda t: random_coalgebra(*t))), st.data())
def test_hom_dimension_matches_module_maps(C, data):
    objs = corpus_objects(C)
    M = data.draw(st.sampled_from(objs))
    N = data.draw(st.sampled_from(objs))
    assert hom_space(M, N).dim == oracle.hom_dim(M, N)
    for f in hom_comodule(M, N):
        assert f.is_morphism()


@settings(max_examples=20, deadline=None)
@given(st.one_of(spec_st.map(coalgebra), random_st.map(lambda t: random_coalgebra(*t))))
def test_biduality(C):
    for M in corpus_objects(C):
        dd = dual_comodule(dual_comodule(M))
        assert dd.side == M.side
        assert find_isomorphism(M, dd) is not None


@settings(max_examples=20, deadline=None)
@given(st.one_of(spec_st.map(coalgebra), random_st.map(lambda t: random_coalgebra(*t))))
def test_hull_socle_and_cover_top(C):
    st_ = structure(C)
    for k, S in enumerate(st_.simples):
        E, emb = injective_hull(S)
        P, surj = projective_cover(S)
        assert emb.is_morphism() and emb.is_injective()
        assert surj.is_morphism() and surj.is_surjective()
        _, dec = socle_and_simples(E)
        assert dec.multiplicities == [1] and find_isomorphism(dec.simples[0], S) is not None
        tops = top_multiplicities(P)
        assert tops[k] == 1 and sum(tops) == 1


@settings(max_examples=20, deadline=None)
@given(st.one_of(spec_st.map(coalgebra), random_st.map(lambda t: random_coalgebra(*t))))
def test_completeness_of_idempotents(C):
    st_ = structure(C)
    classes = [e.iso_class for e in st_.idempotents]
    total = sum(st_.injectives[c].dim for c in classes)
    assert total == C.dim
    # split simples: multiplicity of each class equals the simple's dimension
    for k, S in enumerate(st_.simples):
        assert classes.count(k) == S.dim


@settings(max_examples=20, deadline=None)
@given(st.one_of(spec_st.map(coalgebra), random_st.map(lambda t: random_coalgebra(*t))), st.integers(0, 99))
def test_sub_and_quotient_are_comodules(C, seed):
    R = regular_comodule(C, "right")
    rng = random.Random(seed)
    v = {i: QQ(rng.randint(-2, 2)) for i in range(C.dim)} if C.field.p == 0 else \
        {i: rng.randrange(C.field.p) for i in range(C.dim)}
    # the subcomodule generated by v: span of all f ⇀ v
    vecs = [(R.action(C.basis_vector(a)) @ Matrix.column_vector(C.field, [v.get(i, 0) for i in range(C.dim)])).column(0)
            for a in range(C.dim)]
    W = Subspace.span(C.field, C.dim, [{i: x for i, x in enumerate(w) if x} for w in vecs])
    S, inc = subcomodule(R, W)
    Q, proj = quotient_comodule(R, W)
    assert S.dim + Q.dim == C.dim
    assert ComoduleMap(S, R, inc).is_morphism()
    assert ComoduleMap(R, Q, proj).is_morphism()


def test_indecomposables_are_indecomposable_and_distinct():
    for spec in CORPUS:
        C = coalgebra(spec)
        objs = indecomposables(C)
        for i, M in enumerate(objs):
            assert len(decompose(M)) == 1
            for N in objs[:i]:
                assert M.dim != N.dim or find_isomorphism(M, N) is None
