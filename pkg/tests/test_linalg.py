import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from comodkit.errors import NoSolution
from comodkit.linalg import (
    GF,
    QQ,
    Matrix,
    Subspace,
    find_invertible_combination,
    generic_determinant_vanishes,
    kernel_basis,
    kronecker,
    solve_affine,
)

import oracle

small_ints = st.integers(-4, 4)


def matrices(min_size=1, max_size=4):
    return st.integers(min_size, max_size).flatmap(
        lambda r: st.integers(min_size, max_size).flatmap(
            lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r)))


# ---------------------------------------------------------------- examples


def test_kernel_of_zero_is_everything():
    K = kernel_basis(Matrix.zeros(QQ, 2, 2))
    assert K == Subspace.full(QQ, 2)


def test_kernel_of_identity_is_zero():
    assert kernel_basis(Matrix.identity(QQ, 3)).dim == 0


def test_kernel_of_rank_one():
    K = kernel_basis(Matrix.from_dense(QQ, [[1, 1], [2, 2]]))
    assert K == Subspace.span(QQ, 2, [{0: QQ(1), 1: QQ(-1)}])


def test_solve_identity():
    sol = solve_affine(Matrix.identity(QQ, 3), [QQ(1), QQ(-2), QQ("3/5")])
    assert sol.particular == [1, -2, QQ("3/5")]
    assert sol.kernel.dim == 0


def test_solve_inconsistent():
    with pytest.raises(NoSolution):
        solve_affine(Matrix.zeros(QQ, 2, 2), [QQ(1), QQ(0)])


def test_solve_over_f3():
    F = GF(3)
    sol = solve_affine(Matrix.from_dense(F, [[1, 1]]), [2])
    assert sol.particular == [2, 0]
    assert sol.kernel == Subspace.span(F, 2, [{0: 1, 1: 2}])
    # every solution of x + y = 2 in F_3^2 is particular + kernel
    found = {(x, y) for x in range(3) for y in range(3) if (x + y) % 3 == 2}
    gen = {((2 + t) % 3, (2 * t) % 3) for t in range(3)}
    assert found == gen


def test_kronecker_identities_and_scalars():
    I2 = Matrix.identity(QQ, 2)
    assert kronecker(I2, I2) == Matrix.identity(QQ, 4)
    assert kronecker(Matrix.from_dense(QQ, [[2]]), Matrix.from_dense(QQ, [[3]])) == Matrix.from_dense(QQ, [[6]])


def test_kronecker_left_factor_major():
    A = Matrix.from_dense(QQ, [[1, 2], [3, 4]])
    B = Matrix.from_dense(QQ, [[0, 1], [1, 0]])
    K = kronecker(A, B)
    assert K[0, 1] == 1 and K[0, 3] == 2 and K[3, 0] == 3 and K[2, 3] == 4


def test_field_parsing_and_formatting():
    assert QQ("-3/7") == QQ(-3) / 7
    assert QQ.fmt(QQ("6/4")) == "3/2"
    assert GF(7)(-1) == 6
    assert GF(7).inv(3) == 5
    with pytest.raises(ValueError):
        GF(6)


def test_order_rational_root_of_unity():
    R = Matrix.from_dense(QQ, [[0, -1], [1, -1]])      # order 3
    assert R.order() == 3
    assert Matrix.from_dense(QQ, [[1, 1], [0, 1]]).order() is None
    assert Matrix.from_dense(QQ, [[2]]).order() is None


def test_order_mod_p():
    assert Matrix.from_dense(GF(7), [[2]]).order() == 3


def test_generic_determinant():
    F = QQ
    E11 = Matrix.from_dense(F, [[1, 0], [0, 0]])
    E12 = Matrix.from_dense(F, [[0, 1], [0, 0]])
    E22 = Matrix.from_dense(F, [[0, 0], [0, 1]])
    assert generic_determinant_vanishes(F, [E11, E12])
    assert not generic_determinant_vanishes(F, [E11, E22])
    assert find_invertible_combination(F, [E11, E12]) is None
    A = find_invertible_combination(F, [E11, E22], random.Random(1))
    assert A is not None and A.is_invertible()


def test_invertible_search_small_field_exhaustive():
    F = GF(2)
    # x*I + y*J with J = [[0,1],[1,0]]: invertible iff x != y
    I = Matrix.identity(F, 2)
    J = Matrix.from_dense(F, [[0, 1], [1, 0]])
    A = find_invertible_combination(F, [I + J, J])
    assert A is not None and A.is_invertible()
    assert find_invertible_combination(F, [I + J]) is None


# ---------------------------------------------------------------- properties


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_sympy(rows):
    A = Matrix.from_dense(QQ, rows)
    assert A.rank() == oracle.rank(oracle.domain(QQ), rows, len(rows[0]))


@settings(max_examples=60, deadline=None)
@given(matrices(), st.sampled_from([2, 3, 5, 7]))
def test_rank_matches_sympy_mod_p(rows, p):
    F = GF(p)
    A = Matrix.from_dense(F, rows)
    assert A.rank() == oracle.rank(oracle.domain(F), [[x % p for x in r] for r in rows], len(rows[0]))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_vectors_are_annihilated(rows):
    A = Matrix.from_dense(QQ, rows)
    K = kernel_basis(A)
    assert K.dim + A.rank() == A.ncols
    for v in K.basis():
        assert all(x == 0 for x in (A @ Matrix.column_vector(QQ, v)).column(0))


@settings(max_examples=40, deadline=None)
@given(matrices(), st.integers(0, 10_000))
def test_echelon_form_is_canonical(rows, seed):
    rng = random.Random(seed)
    vecs = [{j: QQ(x) for j, x in enumerate(r) if x} for r in rows]
    n = len(rows[0])
    U = Subspace.span(QQ, n, vecs)
    # unitriangular recombination: same span, different generators
    mixed = []
    for i, v in enumerate(vecs):
        c = dict(v)
        for k in range(i):
            w = QQ(rng.randint(-3, 3))
            for j, x in vecs[k].items():
                c[j] = c.get(j, QQ(0)) + w * x
        mixed.append({j: x for j, x in c.items() if x})
    V = Subspace.span(QQ, n, list(reversed(mixed)))
    assert U == V
    assert U.pivots == V.pivots and U.rows == V.rows


@settings(max_examples=40, deadline=None)
@given(matrices(2, 3), st.lists(small_ints, min_size=3, max_size=3))
def test_solve_affine_solutions_satisfy(rows, x):
    A = Matrix.from_dense(QQ, rows)
    x = x[: A.ncols] + [0] * (A.ncols - len(x))
    b = (A @ Matrix.column_vector(QQ, [QQ(v) for v in x])).column(0)
    sol = solve_affine(A, b)
    got = (A @ Matrix.column_vector(QQ, sol.particular)).column(0)
    assert got == b


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse_and_det(rows):
    A = Matrix.from_dense(QQ, rows)
    if A.is_invertible():
        assert A @ A.inverse() == Matrix.identity(QQ, 3)
        assert A.det() != 0
    else:
        assert A.det() == 0


@settings(max_examples=30, deadline=None)
@given(matrices(1, 3), matrices(1, 3), matrices(1, 3), matrices(1, 3))
def test_kron_mixed_product(a, b, c, d):
    A, B, Cm, D = (Matrix.from_dense(QQ, m) for m in (a, b, c, d))
    if A.ncols != Cm.nrows or B.ncols != D.nrows:
        return
    assert kronecker(A, B) @ kronecker(Cm, D) == kronecker(A @ Cm, B @ D)


def test_exhaustive_search_agrees_with_brute_force():
    F = GF(3)
    rng = random.Random(5)
    for _ in range(30):
        mats = [Matrix.from_dense(F, [[rng.randrange(3) for _ in range(2)] for _ in range(2)]) for _ in range(2)]
        brute = any(
            (mats[0].scale(a) + mats[1].scale(b)).is_invertible()
            for a, b in itertools.product(range(3), repeat=2))
        assert (find_invertible_combination(F, mats) is not None) == brute
