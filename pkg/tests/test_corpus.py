import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jordanlie.corpus import (
    BimoduleSpec,
    RandomAlgebraParams,
    build_direct_sum,
    build_matrix_algebra,
    build_semidirect,
    build_triangular,
    enumerate_idempotent_pairs,
    is_1perfect_by_construction,
    pattern_idempotents,
    random_algebra,
    semidirect_dimension,
)
from jordanlie.errors import PreconditionError
from jordanlie.inner_ideal import InnerIdealCandidate, is_jordan_lie, is_regular, square_is_zero
from jordanlie.scalars import FieldSpec


def test_builders_basic():
    M2 = build_matrix_algebra(2)
    assert M2.dim == 4 and M2.levi().sizes == (2,)
    n4 = build_triangular(4, strict=True)
    assert n4.dim == 6 and n4.radical() == n4.full()
    S = build_direct_sum([M2, build_matrix_algebra(3)])
    assert S.dim == 13 and sorted(S.levi().sizes) == [2, 3]


@pytest.mark.parametrize("bad", [0, -1])
def test_builders_reject_bad_sizes(bad):
    with pytest.raises(PreconditionError):
        build_matrix_algebra(bad)
    with pytest.raises(PreconditionError):
        build_triangular(bad)


def test_semidirect_bimodule_fixture():
    A = build_semidirect([2], BimoduleSpec(((1, 1, 1),)))
    R = A.radical()
    assert R.dim == 4
    assert A.subspace_product(R, R).dim == 0
    S = A.levi().semisimple_part()
    assert A.subspace_product(S, R) == R == A.subspace_product(R, S)


def test_semidirect_two_block_fixture():
    A = build_semidirect([2, 3], BimoduleSpec(((1, 2, 1),)))
    L = A.levi()
    R = A.radical()
    S1, S2 = L.block_subspace(0), L.block_subspace(1)
    assert R.dim == 6
    assert A.subspace_product(R, S1).dim == 0
    assert A.subspace_product(S2, R).dim == 0
    assert A.subspace_product(S1, R) == R == A.subspace_product(R, S2)


def test_semidirect_empty_spec_is_matrix_algebra():
    A = build_semidirect([2], BimoduleSpec(()))
    assert A.structure_constants() == build_matrix_algebra(2).structure_constants()


def test_one_sided_modules():
    left = build_semidirect([2], BimoduleSpec(((1, 0, 1),)))
    right = build_semidirect([2], BimoduleSpec(((0, 1, 1),)))
    assert left.subspace_product(left.radical(), left.full()).dim == 0
    assert right.subspace_product(right.full(), right.radical()).dim == 0


def test_chained_has_long_radical():
    A = build_semidirect([2, 2], BimoduleSpec(((1, 2, 1), (2, 1, 1)), "chained", 3))
    assert len(A.radical_powers()) == 4  # R, R^2, R^3, 0


@pytest.mark.parametrize(
    "spec",
    [
        BimoduleSpec(((3, 1, 1),)),
        BimoduleSpec(((0, 0, 1),)),
        BimoduleSpec(((1, 1, 1),), nilpotency="3"),
    ],
)
def test_semidirect_rejects_bad_specs(spec):
    with pytest.raises(PreconditionError):
        build_semidirect([2], spec)


@given(
    st.lists(st.integers(1, 2), min_size=1, max_size=2),
    st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), max_size=3),
    st.sampled_from(["2", "chained"]),
)
def test_one_perfect_iff_criterion(sizes, arrows, nil):
    r = len(sizes)
    arrows = [(i, j, 1) for i, j in arrows if i <= r and j <= r]
    spec = BimoduleSpec(tuple(arrows), nil, 2, allow_trivial=True)
    if semidirect_dimension(sizes, spec) > 14:
        return
    A = build_semidirect(sizes, spec)
    assert A.dim == semidirect_dimension(sizes, spec)
    assert A.is_1perfect() == is_1perfect_by_construction(sizes, spec)


def test_random_is_deterministic():
    a = random_algebra(1)
    b = random_algebra(1)
    assert a.structure_constants() == b.structure_constants()
    assert [u.units for u in a.levi().blocks] == [u.units for u in b.levi().blocks]


@pytest.mark.parametrize("seed", range(20))
def test_random_respects_cap(seed):
    A = random_algebra(seed, RandomAlgebraParams(max_dim=9))
    assert A.dim <= 9


def test_random_over_prime_field():
    A = random_algebra(3, RandomAlgebraParams(max_dim=10, field=FieldSpec(11)))
    assert A.field == FieldSpec(11)
    A.levi()


def test_m2_patterns_and_pairs():
    M2 = build_matrix_algebra(2)
    idems = pattern_idempotents(M2)
    expected = [M2.zero(), M2.element({"e11": 1}), M2.element({"e22": 1}), M2.unit]
    assert sorted(idems) == sorted(expected)
    pairs, truncated = enumerate_idempotent_pairs(M2, 100)
    brute = [(e, f) for e, f in itertools.product(expected, repeat=2) if not any(M2.multiply(f, e))
             and not any(M2.multiply(e, f))]
    assert not truncated and len(pairs) == len(brute) == 9
    pairs, truncated = enumerate_idempotent_pairs(M2, 5)
    assert truncated and len(pairs) == 5


def test_enumeration_conjugates_are_idempotent():
    A = build_semidirect([2], BimoduleSpec(((1, 1, 1),)))
    pairs, _ = enumerate_idempotent_pairs(A, 100, seed=3, orthogonal_only=False, conjugates=2)
    assert len(pairs) == 16 * 5
    assert all(A.is_idempotent(p.e) and A.is_idempotent(p.f) for p in pairs)


def test_example_nr(nr):
    A = nr.ambient
    sq = A.square()
    brute = A.span(A.multiply(x, y) for x in A.basis() for y in A.basis())
    assert sq == brute and sq.dim == 6
    assert A.powers(A.full())[3].dim == 0
    A1 = nr.algebra
    assert A1.dim == brute.dim + 3
    assert square_is_zero(A1, nr.B)
    c = InnerIdealCandidate.make(A1, nr.generators, k=0)
    assert is_jordan_lie(c) and not is_regular(c)
    E = nr.elements
    assert A1.mul(E["b1"], E["a"], E["b2"]) == E["e14"] and E["e14"] not in nr.B


def test_example_nr_unitalized(nr):
    A1 = nr.algebra
    U = A1.unitalize()
    gens = [A1.embed_in_unitalization(g) for g in nr.generators]
    c = InnerIdealCandidate.make(U, gens, k=0)
    assert is_jordan_lie(c) and not is_regular(c)


def test_example_nr_prime_field():
    from jordanlie.corpus import example_nr

    nr = example_nr(FieldSpec(13))
    c = InnerIdealCandidate.make(nr.algebra, nr.generators, k=0)
    assert is_jordan_lie(c) and not is_regular(c)
