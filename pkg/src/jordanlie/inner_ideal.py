"""Inner ideals of ``L = A^(k)``: predicates, cores, idempotent pairs.

An inner ideal is a subspace ``B`` of ``L`` with ``[B, [B, L]] ⊆ B``; it
is Jordan-Lie when in addition ``B^2 = 0`` in the associative product.
Idempotent pairs ``(e, f)`` with ``fe = 0`` produce the basic examples
``eAf``, and the dominance relations between pairs mirror inclusion of
those subspaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import Algebra, Element
from .errors import NotInnerIdeal, NotRegular, PreconditionError
from .lie import LieView, derived_member
from .scalars import Echelon, Subspace, canonicalize, complement_basis, inverse, kernel


@dataclass(frozen=True)
class InnerIdealCandidate:
    """A subspace ``B`` of ``L = A^(k)``; ``generators`` fixes the order used for diagnostics."""

    view: LieView
    B: Subspace
    generators: tuple = ()

    def __post_init__(self):
        if self.B.ambient_dim != self.view.parent.dim:
            raise PreconditionError("subspace lives in a different algebra")
        if not self.B <= self.view.L:
            raise PreconditionError(f"subspace is not contained in A^({self.view.k})")

    @classmethod
    def make(cls, A: Algebra, vectors, k: int = 1, generators: Sequence | None = None) -> "InnerIdealCandidate":
        vectors = [A.field.vec(v) for v in vectors]
        view = LieView.of(A, k, with_levi=False)
        return cls(view, A.span(vectors), tuple(generators if generators is not None else vectors))

    @property
    def A(self) -> Algebra:
        return self.view.parent

    @property
    def L(self) -> Subspace:
        return self.view.L

    def gens(self) -> tuple:
        return self.generators or self.B.basis

    def with_subspace(self, B: Subspace) -> "InnerIdealCandidate":
        return InnerIdealCandidate(self.view, B)


def is_inner_ideal(cand: InnerIdealCandidate) -> bool:
    A, B = cand.A, cand.B
    if not B.dim:
        return True
    inner = A.bracket_span(B, cand.L)
    return all(A.commutator(b, m) in B for b in B.basis for m in inner.basis)


def square_is_zero(A: Algebra, B: Subspace) -> bool:
    return all(not any(A.multiply(b, c)) for b in B.basis for c in B.basis)


def triple_closed(cand: InnerIdealCandidate) -> bool:
    """``{b, x, b'} ∈ B`` for all basis ``b, b'`` of ``B`` and ``x`` of ``L``."""
    A, B = cand.A, cand.B
    bx = [[A.multiply(b, x) for x in cand.L.basis] for b in B.basis]
    n = B.dim
    for i in range(n):
        for j in range(i, n):
            for t in range(len(cand.L.basis)):
                v = A.field.add(A.multiply(bx[i][t], B.basis[j]), A.multiply(bx[j][t], B.basis[i]))
                if v not in B:
                    return False
    return True


def is_jordan_lie(cand: InnerIdealCandidate) -> bool:
    return square_is_zero(cand.A, cand.B) and triple_closed(cand)


def core_step(cand: InnerIdealCandidate, B: Subspace | None = None) -> Subspace:
    A = cand.A
    B = cand.B if B is None else B
    inner = A.bracket_span(B, cand.L)
    return A.bracket_span(B, inner)


def core(cand: InnerIdealCandidate) -> Subspace:
    """Limit of ``B_n = [B_{n-1}, [B_{n-1}, L]]``."""
    if not is_inner_ideal(cand):
        raise NotInnerIdeal("the core is defined for inner ideals")
    B = cand.B
    while True:
        nxt = core_step(cand, B)
        if nxt == B:
            return B
        B = nxt


def is_L_perfect(cand: InnerIdealCandidate) -> bool:
    return core_step(cand) == cand.B


# regularity


@dataclass(frozen=True)
class RegularWitness:
    """Left ideal ``left`` and right ideal ``right`` with ``left·right = 0`` and ``right·left ⊆ B ⊆ right ∩ left``."""

    left: Subspace
    right: Subspace


def regular_violation(cand: InnerIdealCandidate):
    """First failing product among the generators, or None when ``B`` is regular.

    Returns ``("square", b, b', bb')`` or ``("sandwich", b, x, b', bxb')`` where
    ``x`` runs over the algebra basis.
    """
    A, B = cand.A, cand.B
    gens = cand.gens()
    for b in gens:
        for c in gens:
            p = A.multiply(b, c)
            if any(p):
                return ("square", b, c, p)
    basis = A.basis()
    for b in gens:
        for x in basis:
            bx = A.multiply(b, x)
            if not any(bx):
                continue
            for c in gens:
                p = A.multiply(bx, c)
                if p not in B:
                    return ("sandwich", b, x, c, p)
    return None


def is_regular(cand: InnerIdealCandidate) -> bool:
    return regular_violation(cand) is None


def regular_witness(cand: InnerIdealCandidate) -> RegularWitness:
    bad = regular_violation(cand)
    if bad is not None:
        raise NotRegular("subspace is not regular", violation=bad)
    A, B = cand.A, cand.B
    U = A.unitalize()
    Bh = U.span(A.embed_in_unitalization(b) for b in B.basis)
    left_h = U.subspace_product(U.full(), Bh)
    right_h = U.subspace_product(Bh, U.full())
    left = A.span(v[:-1] for v in left_h.basis)
    right = A.span(v[:-1] for v in right_h.basis)
    w = RegularWitness(left, right)
    check_regular_witness(A, B, w)
    return w


def check_regular_witness(A: Algebra, B: Subspace, w: RegularWitness) -> None:
    if not A.is_ideal(w.left, "left"):
        raise PreconditionError("witness left space is not a left ideal")
    if not A.is_ideal(w.right, "right"):
        raise PreconditionError("witness right space is not a right ideal")
    if A.subspace_product(w.left, w.right).dim:
        raise PreconditionError("left·right is not zero")
    if not A.subspace_product(w.right, w.left) <= B:
        raise PreconditionError("right·left is not inside B")
    if not B <= (w.right & w.left):
        raise PreconditionError("B is not inside right ∩ left")


# idempotent pairs


@dataclass(frozen=True)
class IdempotentPair:
    e: Element
    f: Element
    orthogonal: bool
    strict: bool

    @classmethod
    def make(cls, A: Algebra, e, f, strict: bool | None = None) -> "IdempotentPair":
        e, f = A.field.vec(e), A.field.vec(f)
        if not A.is_idempotent(e) or not A.is_idempotent(f):
            raise PreconditionError("pair members must be idempotent")
        orth = not any(A.multiply(e, f)) and not any(A.multiply(f, e))
        if strict is None:
            strict = strict_flags(A, e, f)
        return cls(e, f, orth, strict)

    def as_tuple(self) -> tuple:
        return (self.e, self.f)


def strict_flags(A: Algebra, e, f) -> bool:
    L = A.levi()
    return L.block_support(e) == L.block_support(f)


def is_strict_pair(A: Algebra, p: IdempotentPair) -> bool:
    return strict_flags(A, p.e, p.f)


def corner(A: Algebra, e, f) -> Subspace:
    """``span{e b_i f}``."""
    ech = Echelon(A.field, A.dim)
    for b in A.basis():
        eb = A.multiply(e, b)
        if any(eb):
            ech.add(A.multiply(eb, f))
    return ech.subspace()


def eAf(A: Algebra, pair: IdempotentPair, k: int = 1) -> InnerIdealCandidate:
    if any(A.multiply(pair.f, pair.e)):
        raise PreconditionError("eAf needs fe = 0")
    C = corner(A, pair.e, pair.f)
    L = derived_member(A, k)
    if k > 1:
        C = C & L
    return InnerIdealCandidate(LieView.of(A, k, with_levi=False), C)


def make_orthogonal(A: Algebra, e, f):
    """``g = f - ef``: idempotent, orthogonal to ``e``, with ``eAg = eAf``."""
    if not A.is_idempotent(e) or not A.is_idempotent(f) or any(A.multiply(f, e)):
        raise PreconditionError("need idempotents e, f with fe = 0")
    g = A.sub(f, A.multiply(e, f))
    assert A.is_idempotent(g) and not any(A.multiply(e, g)) and not any(A.multiply(g, e))
    assert corner(A, e, g) == corner(A, e, f)
    return g


@dataclass(frozen=True)
class PairRelations:
    leq_LR: bool
    leq: bool
    equiv_LR: bool


def _lr(A: Algebra, p: IdempotentPair, q: IdempotentPair) -> bool:
    return A.multiply(q.e, p.e) == p.e and A.multiply(p.f, q.f) == p.f


def pair_relations(A: Algebra, p: IdempotentPair, q: IdempotentPair) -> PairRelations:
    for x in (p.e, p.f, q.e, q.f):
        if not A.is_idempotent(x):
            raise PreconditionError("pair members must be idempotent")
    lr = _lr(A, p, q)
    leq = (
        A.multiply(p.e, q.e) == p.e
        and A.multiply(q.e, p.e) == p.e
        and A.multiply(p.f, q.f) == p.f
        and A.multiply(q.f, p.f) == p.f
    )
    return PairRelations(lr, leq, lr and _lr(A, q, p))


def reduce_pair_under(A: Algebra, p: IdempotentPair, q: IdempotentPair) -> IdempotentPair:
    """``(e e', f' f)``: dominated by ``q`` outright and LR-equivalent to ``p``."""
    if not pair_relations(A, p, q).leq_LR:
        raise PreconditionError("reduction needs p ≤_LR q")
    r = IdempotentPair.make(A, A.multiply(p.e, q.e), A.multiply(q.f, p.f))
    rel_q = pair_relations(A, r, q)
    rel_p = pair_relations(A, r, p)
    if not rel_q.leq or not rel_p.equiv_LR or corner(A, r.e, r.f) != corner(A, p.e, p.f):
        raise PreconditionError("reduced pair fails its checks")
    return r


# semisimple layer


def _require_semisimple(A: Algebra):
    if A.radical().dim:
        raise PreconditionError("ambient algebra must be semisimple")


def component_split(cand: InnerIdealCandidate) -> list:
    """``[B ∩ S_r]`` for the simple components ``S_r``."""
    A = cand.A
    _require_semisimple(A)
    if not is_jordan_lie(cand):
        raise NotInnerIdeal("component split needs a Jordan-Lie inner ideal")
    L = A.levi()
    parts = [cand.B & L.block_subspace(r) for r in range(len(L.blocks))]
    if sum(p.dim for p in parts) != cand.B.dim:
        raise NotInnerIdeal("subspace is not the sum of its block components")
    return parts


def _projector(field, n: int, image: Sequence, rest: Sequence) -> list:
    """Matrix of the projection onto span(image) along span(rest)."""
    cols = list(image) + list(rest)
    if not cols:
        return []
    if len(cols) != n:
        raise NotInnerIdeal("block images do not come from an idempotent pair")
    P = [list(r) for r in zip(*cols)]
    try:
        Pinv = inverse(P, field)
    except ZeroDivisionError:
        raise NotInnerIdeal("block images do not come from an idempotent pair") from None
    k = len(image)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            s = sum(P[i][a] * Pinv[a][j] for a in range(k))
            row.append(field(s))
        out.append(row)
    return out


def recover_block(field, n: int, mats: Sequence) -> tuple:
    """Idempotent matrices ``(e, f)`` with ``e M f = M`` for every ``M`` in ``mats``."""
    cols = [tuple(M[i][j] for i in range(n)) for M in mats for j in range(n)]
    C = canonicalize(cols, field, n)
    rows = [list(r) for M in mats for r in M]
    W = kernel(rows, field, n) if rows else canonicalize([field.unit(n, i) for i in range(n)], field, n)
    comp_W = complement_basis(W)
    f = _projector(field, n, comp_W, W.basis) if comp_W else [[0] * n for _ in range(n)]
    ech = C.echelon()
    D = [w for w in W.basis if ech.add(w)]
    e = _projector(field, n, C.basis, list(D) + list(comp_W)) if C.dim else [[0] * n for _ in range(n)]
    return e, f


def recover_pair_semisimple(cand: InnerIdealCandidate) -> IdempotentPair:
    """Strict orthogonal ``(e, f)`` with ``eAf = B`` in a split semisimple algebra."""
    A = cand.A
    _require_semisimple(A)
    return recover_pair_in(A, A.levi(), cand.B, cand.B)


def recover_pair_in(A: Algebra, levi, B: Subspace, target: Subspace | None = None,
                    project=None) -> IdempotentPair:
    """Pair built from the block images of ``B`` inside the Levi subalgebra.

    ``project`` maps elements into the coordinates that ``levi`` reads; by
    default the elements are used as they are.  When ``target`` is given
    the result is checked to satisfy ``eAf = target``.
    """
    field = A.field
    images = [levi.block_coords(project(b) if project else b) for b in B.basis]
    emats, fmats = [], []
    for r, blk in enumerate(levi.blocks):
        mats = [img[r] for img in images if any(any(row) for row in img[r])]
        e, f = recover_block(field, blk.size, mats)
        emats.append(e)
        fmats.append(f)
    e = levi.from_block_coords(emats)
    f = levi.from_block_coords(fmats)
    pair = IdempotentPair.make(A, e, f)
    if not pair.orthogonal:
        raise NotInnerIdeal("recovered idempotents are not orthogonal")
    if target is not None and corner(A, e, f) != target:
        raise NotInnerIdeal("recovered eAf differs from B, so B is not a Jordan-Lie inner ideal")
    return pair


# report


@dataclass(frozen=True)
class InnerIdealReport:
    is_inner: bool
    is_jordan_lie: bool
    is_regular: bool
    is_L_perfect: bool
    is_bar_minimal: bool | None
    core: Subspace | None
    bar: Subspace
    pair: IdempotentPair | None = None
    witness: RegularWitness | None = None
    split: object | None = None
    violation: tuple | None = None
    checks: dict = field(default_factory=dict)
