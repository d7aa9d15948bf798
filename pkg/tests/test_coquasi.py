import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from comodkit.coalg import validate_coalgebra
from comodkit.comod import Comodule, find_isomorphism, structure
from comodkit.coquasi import (
    CoquasiBialgebra,
    coquasi_antipode_check,
    coquasi_classification,
    hopf_left_comodule_dual,
    preantipode_solve,
    right_dual_coquasi,
    trivial_omega,
    validate_coquasi,
)
from comodkit.corpus import build, build_cyclic_coquasi, build_group, parse_spec
from comodkit.errors import NoPreantipode, NotConvolutionInvertible, ValidationError
from comodkit.linalg import GF, QQ, Matrix


def kz2():
    return build_group(2)


def omega_with(changes):
    # omega on kZ2, index (a, b, c) -> 4a + 2b + c
    w = [1] * 8
    for (a, b, c), v in changes.items():
        w[4 * a + 2 * b + c] = v
    return w


def monoid_bialgebra():
    # k{e, x} with x^2 = x: a bialgebra without antipode
    C = validate_coalgebra(QQ, 2, [(0, 0, 0, 1), (1, 1, 1, 1)], [1, 1], ["e", "x"])
    mult = [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 1, 1)]
    return validate_coquasi(C, mult, [1, 0], trivial_omega(C))


def left_objects(C):
    st_ = structure(C.cop())
    return [Comodule(C, "left", S.act, S.name) for S in list(st_.simples) + list(st_.injectives)]


# ---------------------------------------------------------------- validation


def test_trivial_associator_is_valid():
    H = kz2()
    T = validate_coquasi(H.base, H.mult, H.unit, trivial_omega(H.base))
    assert isinstance(T, CoquasiBialgebra) and T.is_trivial


def test_nontrivial_associator_on_z2():
    H = build_cyclic_coquasi(2)
    assert not H.is_trivial
    assert H.omega_vector()[7] == -1 and sum(H.omega_vector()) == 6
    # omega is its own convolution inverse here
    assert H.omega_vector(inverse=True) == H.omega_vector()


def test_cyclic_associator_over_f7():
    H = build_cyclic_coquasi(3, field=GF(7))
    assert not H.is_trivial and H.dim == 3


def test_non_cocycle_is_rejected():
    H = kz2()
    with pytest.raises(ValidationError) as err:
        validate_coquasi(H.base, H.mult, H.unit, omega_with({(1, 1, 1): 2}))
    assert err.value.axiom == "cocycle"
    assert err.value.witness["tuple"] == [1, 1, 1, 1]


def test_non_normalized_is_rejected():
    H = kz2()
    with pytest.raises(ValidationError) as err:
        validate_coquasi(H.base, H.mult, H.unit, omega_with({(1, 0, 1): -1}))
    assert err.value.axiom == "normalization"


def test_non_invertible_associator_is_rejected():
    H = kz2()
    with pytest.raises(NotConvolutionInvertible):
        validate_coquasi(H.base, H.mult, H.unit, omega_with({(1, 1, 1): 0}))


def test_omega_length_is_checked():
    H = kz2()
    with pytest.raises(ValidationError) as err:
        validate_coquasi(H.base, H.mult, H.unit, [1] * 7)
    assert err.value.axiom == "omega-shape"


# ---------------------------------------------------------------- preantipode and antipode


def test_preantipode_of_nontrivial_z2():
    pre = preantipode_solve(build_cyclic_coquasi(2))
    assert pre is not None and pre.solution_dim == 0
    assert pre.S.to_dense() == [[1, 0], [0, -1]]


def test_preantipode_of_group_algebra_is_antipode():
    H = kz2()
    T = validate_coquasi(H.base, H.mult, H.unit, trivial_omega(H.base))
    assert preantipode_solve(T).S == H.antipode


def test_no_preantipode_without_antipode():
    T = monoid_bialgebra()
    assert preantipode_solve(T) is None
    with pytest.raises(NoPreantipode):
        right_dual_coquasi(T, left_objects(T.base)[0])
    with pytest.raises(NoPreantipode):
        coquasi_classification(T)


def test_antipode_signs():
    H = build_cyclic_coquasi(2)
    s = Matrix.identity(QQ, 2)
    assert coquasi_antipode_check(H, s, (1, -1), (1, 1))
    assert coquasi_antipode_check(H, s, (1, 1), (1, -1))
    bad = coquasi_antipode_check(H, s, (1, 1), (1, 1))
    assert not bad and bad.equation == "omega-inverse" and bad.witness == 1


# ---------------------------------------------------------------- duals and classification


def test_right_dual_of_trivial_comodule():
    H = build_cyclic_coquasi(2)
    k = Comodule(H.base, "left", [Matrix.from_dense(QQ, [[1]]), Matrix.from_dense(QQ, [[0]])], "k")
    D = right_dual_coquasi(H, k).comodule
    assert D.dim == 1 and find_isomorphism(D, k) is not None


@pytest.mark.parametrize("spec", ["group:n=2", "group:n=3", "sweedler", "taft:n=2"])
def test_trivial_associator_dual_matches_hopf_dual(spec):
    Hh = build(parse_spec(spec))
    T = validate_coquasi(Hh.base, Hh.mult, Hh.unit, trivial_omega(Hh.base))
    for X in left_objects(Hh.base):
        D = right_dual_coquasi(T, X)
        assert D.coinvariants.dim == X.dim
        assert find_isomorphism(D.comodule, hopf_left_comodule_dual(Hh, X)) is not None


def test_classification_of_nontrivial_z2():
    rep = coquasi_classification(build_cyclic_coquasi(2))
    assert rep.left_cointegrals == rep.right_cointegrals == 1
    assert rep.projective_exists and rep.quasiFrobenius and rep.items_consistent
    assert rep.dual_dims == [(1, 1), (1, 1)]
    assert rep.dimension_criterion and not rep.qf_without_dimension_criterion


def test_classification_of_sweedler_with_trivial_associator():
    Hh = build(parse_spec("sweedler"))
    T = validate_coquasi(Hh.base, Hh.mult, Hh.unit, trivial_omega(Hh.base))
    rep = coquasi_classification(T)
    assert rep.items_consistent and rep.dimension_criterion


# ---------------------------------------------------------------- properties


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([(2, QQ), (2, GF(3)), (3, GF(7)), (4, GF(5))]), st.integers(0, 3))
def test_cyclic_associators_validate(case, exponent):
    n, F = case
    H = build_cyclic_coquasi(n, exponent, F)
    assert preantipode_solve(H) is not None
    assert coquasi_classification(H).items_consistent


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["group:n=2", "group:n=3", "sweedler"]), st.integers(0, 3))
def test_double_right_dual_preserves_dimension(spec, k):
    Hh = build(parse_spec(spec))
    T = validate_coquasi(Hh.base, Hh.mult, Hh.unit, trivial_omega(Hh.base))
    objs = left_objects(Hh.base)
    X = objs[k % len(objs)]
    D2 = right_dual_coquasi(T, right_dual_coquasi(T, X).comodule).comodule
    assert D2.dim == X.dim


HOPF_CORPUS = ["group:n=2", "group:n=3", "group:n=4", "sweedler", "taft:n=2", "taft:n=3,p=7,q=2",
               "function-hopf:group=S3"]


@pytest.mark.parametrize("spec", HOPF_CORPUS)
def test_hopf_corpus_with_trivial_associator(spec):
    Hh = build(parse_spec(spec))
    T = validate_coquasi(Hh.base, Hh.mult, Hh.unit, trivial_omega(Hh.base))
    pre = preantipode_solve(T)
    # with trivial associator the preantipode is the antipode, and it is unique
    assert pre.S == Hh.antipode and pre.solution_dim == 0
    assert coquasi_antipode_check(T, Hh.antipode, T.base.eps, T.base.eps)
    rep = coquasi_classification(T)
    assert rep.items_consistent and rep.left_cointegrals == rep.right_cointegrals == 1
    assert rep.dimension_criterion and not rep.qf_without_dimension_criterion


@pytest.mark.parametrize("spec", ["cyclic-coquasi:n=2", "cyclic-coquasi:n=3,p=7", "cyclic-coquasi:n=2,exponent=3,p=5"])
def test_preantipode_solution_space_is_at_most_one_point(spec):
    H = build(parse_spec(spec))
    pre = preantipode_solve(H)
    assert pre is not None and pre.solution_dim == 0
