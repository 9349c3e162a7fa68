import pytest

from jordanlie.corpus import (
    BimoduleSpec,
    RandomAlgebraParams,
    build_direct_sum,
    build_matrix_algebra,
    build_semidirect,
    build_triangular,
    random_algebra,
)
from jordanlie.errors import PreconditionError, UndecidableError
from jordanlie.inner_ideal import InnerIdealCandidate, core, is_jordan_lie
from jordanlie.invariants import jordan_lie_candidates
from jordanlie.lie import (
    LieView,
    bar_image,
    derived_limit,
    derived_member,
    derived_of,
    derived_series,
    is_perfect,
    is_quasi_semisimple,
    nil_radical,
    quasi_levi,
)
from jordanlie.scalars import FieldSpec

M2 = build_matrix_algebra(2)
M3 = build_matrix_algebra(3)
T2 = build_triangular(2)
T3 = build_triangular(3)


def test_derived_m2():
    assert derived_member(M2, 1).dim == 3
    assert derived_member(M2, 2) == derived_member(M2, 1)
    assert derived_limit(M2) == derived_member(M2, 1)


def test_derived_commutative():
    A = build_direct_sum([build_matrix_algebra(1)] * 3)
    assert derived_member(A, 1).dim == 0


def test_derived_t3():
    assert derived_member(T3, 1) == T3.span(T3.element({lab: 1}) for lab in ("e12", "e13", "e23"))
    assert derived_member(T3, 2) == T3.span([T3.element({"e13": 1})])
    assert derived_member(T3, 3).dim == 0
    assert [U.dim for U in derived_series(T3)] == [6, 3, 1, 0, 0]


def test_nil_radical_examples():
    assert nil_radical(LieView.of(M3)).dim == 0
    v = LieView.of(T2, 1)
    assert v.L == v.N == T2.span([T2.element({"e12": 1})])
    A = build_semidirect([2], BimoduleSpec(((1, 1, 1), (1, 0, 1))))
    S = A.levi().semisimple_part()
    assert LieView.of(A, 1).N == A.bracket_span(S, A.radical())


def test_quasi_levi_m2_plus_t2():
    A = build_direct_sum([M2, T2])
    Q, N = quasi_levi(LieView.of(A, 1))
    assert Q.dim == 3
    assert N == A.span([A.element({"e12@1": 1})])


def test_quasi_levi_semisimple_and_nilpotent(nr):
    Q, N = quasi_levi(LieView.of(M3, 1))
    assert N.dim == 0 and Q == derived_member(M3, 1)
    view = LieView.of(nr.algebra, 1)
    Q, N = quasi_levi(view)
    assert Q.dim == 0 and N == view.L
    with pytest.raises(PreconditionError):
        quasi_levi(LieView.of(M3, 0))


def test_quasi_semisimple_examples():
    assert is_quasi_semisimple(M3, derived_member(M3, 1))
    A = build_direct_sum([M2, M3])
    assert is_quasi_semisimple(A, derived_member(A, 1))
    abelian = build_direct_sum([build_matrix_algebra(1)] * 2)
    assert not is_quasi_semisimple(abelian, abelian.full())
    assert is_quasi_semisimple(M2, M2.zero_space())


def test_quasi_semisimple_with_centre():
    # gl2 is not perfect; sl2 + centre of M2 + M2 block is.
    assert not is_quasi_semisimple(M2, M2.full())


def test_quasi_semisimple_prime_field():
    F = FieldSpec(11)
    A = build_direct_sum([build_matrix_algebra(2, F), build_matrix_algebra(2, F)])
    assert is_quasi_semisimple(A, derived_member(A, 1))
    first = A.levi().block_subspace(0)
    with pytest.raises(UndecidableError):
        is_quasi_semisimple(A, A.bracket_span(first, first))


def test_quasi_semisimple_requires_subalgebra():
    U = M2.span([M2.element({"e12": 1}), M2.element({"e21": 1})])
    with pytest.raises(PreconditionError):
        is_quasi_semisimple(M2, U)


def test_bar_image_examples():
    A = build_semidirect([2], BimoduleSpec(((1, 1, 1),)))
    assert bar_image(A, A.radical()).dim == 0
    S = A.levi().semisimple_part()
    q = A.element({"r0_12": 1})
    graph = A.span(A.conjugate_by_unipotent(q, s) for s in S.basis)
    assert bar_image(A, graph).dim == S.dim


@pytest.mark.parametrize("seed", range(6))
def test_core_keeps_bar(seed):
    import random

    A = random_algebra(seed, RandomAlgebraParams(max_dim=12))
    for kind, cand in jordan_lie_candidates(A, random.Random(seed), pair_budget=20):
        C = core(cand)
        assert C <= cand.B
        assert core(cand.with_subspace(C)) == C
        assert bar_image(A, C) == bar_image(A, cand.B)


def test_perfect_derived_of_1perfect(corpus):
    for name, A in corpus.items():
        if A.dim > 20:
            continue
        if A.is_1perfect():
            D = derived_member(A, 1)
            assert derived_limit(A) == D, name
            assert is_perfect(A, D), name
        assert derived_limit(A) == derived_of(A, A.one_perfect_radical(), 1), name


@pytest.mark.parametrize("sizes", [(2,), (2, 3), (1, 2, 2)])
def test_semisimple_commutator_dimension(sizes):
    A = build_direct_sum([build_matrix_algebra(n) for n in sizes])
    assert derived_member(A, 1).dim == sum(n * n - 1 for n in sizes)


def test_candidate_view_rejects_outside_L():
    with pytest.raises(PreconditionError):
        InnerIdealCandidate.make(M2, [M2.unit], k=1)
    assert not is_jordan_lie(InnerIdealCandidate.make(M2, [M2.unit], k=0))
