import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jordanlie.corpus import (
    RandomAlgebraParams,
    build_direct_sum,
    build_matrix_algebra,
    build_triangular,
    enumerate_idempotent_pairs,
    elementary_conjugate,
    random_algebra,
    random_radical_element,
)
from jordanlie.errors import NotInnerIdeal, NotRegular, PreconditionError
from jordanlie.inner_ideal import (
    IdempotentPair,
    InnerIdealCandidate,
    check_regular_witness,
    component_split,
    core,
    corner,
    eAf,
    is_inner_ideal,
    is_jordan_lie,
    is_L_perfect,
    is_regular,
    is_strict_pair,
    make_orthogonal,
    pair_relations,
    recover_pair_semisimple,
    reduce_pair_under,
    regular_violation,
    regular_witness,
    square_is_zero,
)
from jordanlie.lie import derived_member

M2 = build_matrix_algebra(2)
M3 = build_matrix_algebra(3)
T2 = build_triangular(2)
M2M2 = build_direct_sum([M2, M2])


def e(A, **kw):
    return A.element(kw)


def cand(A, vectors, k=1):
    return InnerIdealCandidate.make(A, vectors, k=k)


# predicates


def test_ideal_is_inner():
    A = build_direct_sum([M2, T2])
    L = derived_member(A, 1)
    first = A.span(A.basis()[:4]) & L
    assert is_inner_ideal(InnerIdealCandidate.make(A, first.basis))


def test_e12_inner_in_sl2():
    assert is_inner_ideal(cand(M2, [e(M2, e12=1)]))


def test_e11_not_inner():
    assert not is_inner_ideal(cand(M2, [e(M2, e11=1)], k=0))


def test_jordan_lie_examples(nr):
    B = eAf(M3, IdempotentPair.make(M3, e(M3, e11=1), e(M3, e33=1)))
    assert is_jordan_lie(B)
    assert not is_jordan_lie(cand(M3, [M3.unit], k=0))
    assert is_jordan_lie(InnerIdealCandidate.make(nr.algebra, nr.generators, k=0))


@given(st.lists(st.integers(-2, 2), min_size=9, max_size=9), st.lists(st.integers(-2, 2), min_size=9, max_size=9),
       st.lists(st.integers(-2, 2), min_size=9, max_size=9))
def test_bracket_identity(b, bp, x):
    # for b b' = b' b = 0 we have [b,[b',x]] = -(b x b' + b' x b)
    b = M3.field.vec(b)
    bp = M3.field.vec(bp)
    x = M3.field.vec(x)
    if any(M3.multiply(b, bp)) or any(M3.multiply(bp, b)):
        return
    lhs = M3.commutator(b, M3.commutator(bp, x))
    rhs = M3.field.neg(M3.field.add(M3.mul(b, x, bp), M3.mul(bp, x, b)))
    assert lhs == rhs


@pytest.mark.parametrize("seed", range(6))
def test_jordan_lie_matches_inner_with_zero_square(seed):
    rng = random.Random(seed)
    A = random_algebra(seed, RandomAlgebraParams(max_dim=10))
    L = derived_member(A, 1)
    for _ in range(30):
        vs = [A.field.combo(((rng.randint(-1, 1), v) for v in rng.sample(L.basis, min(2, L.dim))), A.dim)
              for _ in range(rng.randint(1, 2))] if L.dim else []
        c = InnerIdealCandidate.make(A, vs)
        if square_is_zero(A, c.B):
            assert is_jordan_lie(c) == is_inner_ideal(c)


def test_core_examples():
    L = derived_member(T2, 1)
    c = InnerIdealCandidate.make(T2, L.basis)
    assert core(c).dim == 0
    assert not is_L_perfect(c)
    B = cand(M2, [e(M2, e12=1)])
    assert core(B) == B.B and is_L_perfect(B)
    zero = cand(M2, [])
    assert core(zero).dim == 0 and is_L_perfect(zero)
    with pytest.raises(NotInnerIdeal):
        core(cand(M2, [e(M2, e11=1)], k=0))


def test_regular_witness_e12():
    c = cand(M2, [e(M2, e12=1)])
    w = regular_witness(c)
    assert w.left == M2.span([e(M2, e12=1), e(M2, e22=1)])
    assert w.right == M2.span([e(M2, e11=1), e(M2, e12=1)])
    assert M2.subspace_product(w.left, w.right).dim == 0
    assert M2.subspace_product(w.right, w.left) == c.B


def test_example_nr_not_regular(nr):
    c = InnerIdealCandidate.make(nr.algebra, nr.generators, k=0)
    assert not is_regular(c)
    kind, b, x, bp, p = regular_violation(c)
    E = nr.elements
    assert (kind, b, x, bp, p) == ("sandwich", E["b1"], E["a"], E["b2"], E["e14"])
    assert p not in c.B
    with pytest.raises(NotRegular) as info:
        regular_witness(c)
    assert info.value.violation[-1] == E["e14"]


def test_zero_is_regular():
    w = regular_witness(cand(M2, []))
    assert w.left.dim == 0 and w.right.dim == 0


def test_von_neumann_regular_semisimple():
    for c in (cand(M3, [e(M3, e13=1), e(M3, e23=1)]), cand(M2, [e(M2, e12=1)])):
        w = regular_witness(c)
        assert c.A.subspace_product(w.right, w.left) == (w.right & w.left)


def test_witness_check_rejects_swapped():
    c = cand(M2, [e(M2, e12=1)])
    w = regular_witness(c)
    bad = type(w)(w.right, w.left)
    with pytest.raises(PreconditionError):
        check_regular_witness(M2, c.B, bad)


# pairs


def test_eAf_examples():
    p = IdempotentPair.make(M3, e(M3, e11=1), e(M3, e22=1, e33=1))
    assert eAf(M3, p).B == M3.span([e(M3, e12=1), e(M3, e13=1)])
    assert eAf(M3, IdempotentPair.make(M3, M3.zero(), M3.zero())).B.dim == 0
    with pytest.raises(PreconditionError):
        eAf(M2, IdempotentPair.make(M2, e(M2, e11=1), e(M2, e11=1)))


def test_eAf_block_product_formula():
    ee = M2M2.element({"e11@0": 1, "e11@1": 1, "e22@1": 1})
    ff = M2M2.element({"e22@0": 1})
    p = IdempotentPair.make(M2M2, M2M2.element({"e11@0": 1, "e11@1": 1}), M2M2.element({"e22@0": 1, "e22@1": 1}))
    assert p.strict and eAf(M2M2, p).B.dim == 1 * 1 + 1 * 1
    assert not IdempotentPair.make(M2M2, ee, ff).strict


def test_make_orthogonal_examples():
    ee, f = e(M2, e11=1), e(M2, e22=1, e12=1)
    assert make_orthogonal(M2, ee, f) == e(M2, e22=1)
    assert corner(M2, ee, f) == M2.span([e(M2, e12=1)])
    g = e(M2, e22=1)
    assert make_orthogonal(M2, ee, g) == g
    assert make_orthogonal(M2, M2.zero(), f) == f
    with pytest.raises(PreconditionError):
        make_orthogonal(M2, e(M2, e22=1), e(M2, e12=1, e22=1))


def test_pair_relations_examples():
    p = IdempotentPair.make(M3, e(M3, e11=1), M3.zero())
    q = IdempotentPair.make(M3, e(M3, e11=1, e22=1), M3.zero())
    rel = pair_relations(M3, p, q)
    assert rel.leq_LR and rel.leq and not rel.equiv_LR
    assert M3.span(M3.multiply(p.e, b) for b in M3.basis()) <= M3.span(M3.multiply(q.e, b) for b in M3.basis())
    same = pair_relations(M3, q, q)
    assert same.leq_LR and same.leq and same.equiv_LR


def test_left_domination_by_hand():
    # e = e11 + e12 and e' = e11: e'e = e but ee' = e11, so only one-sided domination.
    p = IdempotentPair.make(M2, e(M2, e11=1, e12=1), M2.zero())
    q = IdempotentPair.make(M2, e(M2, e11=1), M2.zero())
    rel = pair_relations(M2, p, q)
    assert rel.leq_LR and not rel.leq
    r = reduce_pair_under(M2, p, q)
    assert r.e == e(M2, e11=1)
    assert pair_relations(M2, r, p).equiv_LR


def test_reduce_pair_already_dominated():
    p = IdempotentPair.make(T2, e(T2, e11=1), e(T2, e22=1))
    q = IdempotentPair.make(T2, e(T2, e11=1, e22=1), e(T2, e11=1, e22=1))
    assert pair_relations(T2, p, q).leq
    r = reduce_pair_under(T2, p, q)
    assert (r.e, r.f) == (p.e, p.f)
    with pytest.raises(PreconditionError):
        reduce_pair_under(T2, q, p)


@pytest.mark.parametrize("seed", range(8))
def test_reduce_pair_randomised(seed):
    rng = random.Random(seed)
    A = random_algebra(seed, RandomAlgebraParams(max_dim=12))
    pairs, _ = enumerate_idempotent_pairs(A, 60, seed=seed, orthogonal_only=False)
    if not A.radical().dim:
        return
    for p in pairs:
        for q in pairs:
            if not pair_relations(A, p, q).leq:
                continue
            g = random_radical_element(A, rng)
            moved = IdempotentPair.make(A, A.conjugate_by_unipotent(g, p.e), A.conjugate_by_unipotent(g, p.f))
            if not pair_relations(A, moved, q).leq_LR:
                continue
            r = reduce_pair_under(A, moved, q)
            assert pair_relations(A, r, q).leq
            assert pair_relations(A, r, moved).equiv_LR
            assert corner(A, r.e, r.f) == corner(A, moved.e, moved.f)


def test_strictness_examples():
    assert is_strict_pair(M2, IdempotentPair.make(M2, e(M2, e11=1), e(M2, e22=1)))
    p = IdempotentPair.make(M2M2, M2M2.element({"e11@0": 1}), M2M2.element({"e11@1": 1}))
    assert not is_strict_pair(M2M2, p)
    assert is_strict_pair(M2M2, IdempotentPair.make(M2M2, M2M2.zero(), M2M2.zero()))


def test_pair_members_must_be_idempotent():
    with pytest.raises(PreconditionError):
        IdempotentPair.make(M2, e(M2, e12=1), M2.zero())


# semisimple layer


def test_component_split_examples():
    c = cand(M2M2, [M2M2.element({"e12@0": 1})])
    parts = component_split(c)
    assert [p.dim for p in parts] == [1, 0]
    c = cand(M2M2, [M2M2.element({"e12@0": 1}), M2M2.element({"e12@1": 1})])
    assert [p.dim for p in component_split(c)] == [1, 1]
    diagonal = cand(M2M2, [M2M2.element({"e12@0": 1, "e12@1": 1})])
    assert not is_inner_ideal(diagonal)
    with pytest.raises(NotInnerIdeal):
        component_split(diagonal)
    with pytest.raises(PreconditionError):
        component_split(cand(T2, []))


def test_recover_pair_by_hand():
    c = cand(M3, [e(M3, e13=1), e(M3, e23=1)])
    p = recover_pair_semisimple(c)
    assert (p.e, p.f) == (e(M3, e11=1, e22=1), e(M3, e33=1))
    z = recover_pair_semisimple(cand(M3, []))
    assert (z.e, z.f) == (M3.zero(), M3.zero())


def test_recover_rejects_non_inner():
    with pytest.raises(NotInnerIdeal):
        recover_pair_semisimple(cand(M3, [e(M3, e12=1), e(M3, e23=1)]))


@pytest.mark.parametrize("A", [M2, M3, M2M2, build_direct_sum([M2, build_matrix_algebra(3)])],
                         ids=["M2", "M3", "M2+M2", "M2+M3"])
def test_recover_conjugated_pairs(A):
    rng = random.Random(A.dim)
    pairs, _ = enumerate_idempotent_pairs(A, 200, seed=1)
    for p in pairs:
        if not p.strict:
            continue
        state = rng.getstate()
        ee = elementary_conjugate(A, p.e, rng)
        rng.setstate(state)
        ff = elementary_conjugate(A, p.f, rng)
        moved = IdempotentPair.make(A, ee, ff)
        c = eAf(A, moved)
        r = recover_pair_semisimple(c)
        assert corner(A, r.e, r.f) == c.B
        assert pair_relations(A, r, moved).equiv_LR
        assert r.strict and r.orthogonal
        assert is_L_perfect(c)


@pytest.mark.parametrize("seed", range(6))
def test_corner_containment_matches_dominance(seed):
    A = random_algebra(seed, RandomAlgebraParams(max_dim=12))
    pairs, _ = enumerate_idempotent_pairs(A, 40, seed=seed, orthogonal_only=False, conjugates=1)
    corners = [corner(A, p.e, p.f) for p in pairs]
    for i, p in enumerate(pairs):
        if not p.strict:
            continue
        if any(p.e) or any(p.f):
            assert corners[i].dim
        for j, q in enumerate(pairs):
            assert (corners[i] <= corners[j]) == pair_relations(A, p, q).leq_LR


@pytest.mark.parametrize("seed", range(4))
def test_l_perfect_inside_p1(seed):
    from jordanlie.invariants import jordan_lie_candidates
    from jordanlie.lie import LieView

    A = random_algebra(seed, RandomAlgebraParams(max_dim=12))
    P = A.one_perfect_radical()
    sub = A.subalgebra(P)
    for _, c in jordan_lie_candidates(A, random.Random(seed), 20):
        C = core(c)
        assert C <= P
        coords = [P.coordinates(v) for v in C.basis]
        inner = InnerIdealCandidate(LieView.of(sub, 1, with_levi=False), sub.span(coords))
        assert is_jordan_lie(inner)
