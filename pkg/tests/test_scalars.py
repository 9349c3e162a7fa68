from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jordanlie.errors import DimensionMismatch, UnsupportedCharacteristic
from jordanlie.scalars import (
    QQ,
    Echelon,
    FieldSpec,
    canonicalize,
    complement_basis,
    inverse,
    kernel,
    matmul,
    membership,
    solve,
    subspace_combine,
)

F7 = FieldSpec(7)


@pytest.mark.parametrize("p", [2, 3, 4, 9, -5])
def test_rejects_bad_characteristic(p):
    with pytest.raises(UnsupportedCharacteristic):
        FieldSpec(p)


def test_parse_and_str():
    assert FieldSpec.parse("Q") == QQ
    assert str(FieldSpec.parse("F13")) == "F13"
    with pytest.raises(ValueError):
        FieldSpec.parse("R")


def test_prime_field_arithmetic():
    assert F7(-1) == 6
    assert F7.inv(3) == 5
    assert F7(Fraction(1, 2)) == 4
    assert F7.div(1, 2) == 4


def test_rational_normalisation():
    assert QQ(Fraction(4, 2)) == 2 and isinstance(QQ(Fraction(4, 2)), int)
    assert QQ("3/6") == Fraction(1, 2)


@pytest.mark.parametrize(
    "vectors, basis",
    [
        ([(1, 1), (0, 1)], ((1, 0), (0, 1))),
        ([(2, 4)], ((1, 2),)),
        ([(0, 0)], ()),
    ],
)
def test_canonicalize_examples(vectors, basis):
    assert canonicalize(vectors, QQ, 2).basis == basis


def test_canonicalize_empty():
    assert canonicalize([], QQ, 3).dim == 0


def test_canonicalize_mixed_lengths():
    with pytest.raises(DimensionMismatch):
        canonicalize([(1, 0), (1, 0, 0)], QQ)


def test_combine_axes():
    X = canonicalize([(1, 0)], QQ, 2)
    Y = canonicalize([(0, 1)], QQ, 2)
    assert subspace_combine(X, Y, "sum").dim == 2
    assert subspace_combine(X, Y, "intersect").dim == 0
    assert subspace_combine(X, X, "sum") == X == subspace_combine(X, X, "intersect")


def test_intersection_by_hand():
    U = canonicalize([(1, 0, 0), (0, 1, 0)], QQ, 3)
    V = canonicalize([(0, 1, 0), (0, 0, 1)], QQ, 3)
    assert (U & V).basis == ((0, 1, 0),)


def test_membership_examples():
    U = canonicalize([(1, 0)], QQ, 2)
    assert membership(U, (0, 0))
    assert not membership(U, (1, 1))


def test_solve_by_hand():
    sol = solve([[1, 2], [2, 4]], (1, 2), QQ, 2)
    assert sol.particular == (1, 0)
    assert sol.kernel == canonicalize([(-2, 1)], QQ, 2)
    assert solve([[1, 2], [2, 4]], (1, 3), QQ, 2) is None


def test_inverse_and_complement():
    M = [[2, 1], [1, 1]]
    assert matmul(M, inverse(M, QQ), QQ) == [[1, 0], [0, 1]]
    with pytest.raises(ZeroDivisionError):
        inverse([[1, 2], [2, 4]], QQ)
    U = canonicalize([(1, 1, 0)], QQ, 3)
    comp = complement_basis(U)
    assert (U + canonicalize(comp, QQ, 3)).dim == 3


def test_echelon_incremental():
    ech = Echelon(QQ, 3)
    assert ech.add((1, 2, 3))
    assert not ech.add((2, 4, 6))
    assert ech.contains((3, 6, 9)) and ech.rank == 1


small = st.integers(-3, 3)


def vectors(n, k):
    return st.lists(st.tuples(*[small] * n), min_size=0, max_size=k)


@given(vectors(4, 5), st.randoms(use_true_random=False))
def test_canonicalize_order_insensitive_and_idempotent(vs, rnd):
    U = canonicalize(vs, QQ, 4)
    shuffled = list(vs)
    rnd.shuffle(shuffled)
    assert canonicalize(shuffled, QQ, 4) == U
    assert canonicalize(U.basis, QQ, 4) == U
    for row, p in zip(U.basis, U.pivots):
        assert row[p] == 1
        assert all(other[p] == 0 for other in U.basis if other is not row)


@given(vectors(4, 3), vectors(4, 3))
def test_grassmann(us, vs):
    U, V = canonicalize(us, QQ, 4), canonicalize(vs, QQ, 4)
    assert U.dim + V.dim == (U + V).dim + (U & V).dim
    assert (U & V) <= U and U <= (U + V)


@given(vectors(3, 3), st.tuples(small, small, small))
def test_membership_matches_rank(us, v):
    U = canonicalize(us, QQ, 3)
    assert membership(U, v) == ((U + canonicalize([v], QQ, 3)).dim == U.dim)


@given(st.lists(st.tuples(*[st.integers(0, 6)] * 4), max_size=4), st.lists(st.tuples(*[st.integers(0, 6)] * 4), max_size=4))
def test_grassmann_mod_p(us, vs):
    U, V = canonicalize(us, F7, 4), canonicalize(vs, F7, 4)
    assert U.dim + V.dim == (U + V).dim + (U & V).dim


@given(st.lists(st.tuples(small, small, small), min_size=1, max_size=3), st.tuples(small, small, small))
def test_solve_solutions_are_solutions(M, x):
    b = tuple(sum(r[i] * x[i] for i in range(3)) for r in M)
    sol = solve([list(r) for r in M], b, QQ, 3)
    assert sol is not None
    assert all(sum(r[i] * sol.particular[i] for i in range(3)) == bi for r, bi in zip(M, b))
    K = kernel([list(r) for r in M], QQ, 3)
    assert sol.kernel == K
    for k in K.basis:
        assert all(sum(r[i] * k[i] for i in range(3)) == 0 for r in M)
