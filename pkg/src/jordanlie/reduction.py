"""From a Jordan-Lie inner ideal to an idempotent pair inside it.

``bar_minimal_reduce`` takes a Jordan-Lie inner ideal ``B`` and returns a
strict orthogonal idempotent pair ``(e, f)`` with ``eAf ⊆ B`` and
``eAf`` having the same image as ``B`` modulo the radical.  The pair is
first read off in the Levi subalgebra and then moved by unipotent
conjugations ``x -> (1+q) x (1+q)^{-1}``; each conjugator is found by a
linear solve that fixes ``eAf`` modulo the next power of the radical.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Algebra, Element
from .errors import NotInnerIdeal, PreconditionError, ReductionFailed
from .inner_ideal import (
    IdempotentPair,
    InnerIdealCandidate,
    core,
    corner,
    is_jordan_lie,
    recover_pair_in,
)
from .lie import same_bar
from .scalars import Subspace, kernel, solve
from .wedderburn import lift_idempotent_iter

STRATEGIES = ("layer", "doubling")


def lift_idempotent(A: Algebra, x) -> Element:
    """Idempotent ``e`` with ``e - x`` in the radical; needs ``x^2 - x`` in the radical."""
    x = A.field.vec(x)
    if A.sub(A.multiply(x, x), x) not in A.radical():
        raise PreconditionError("x is not idempotent modulo the radical")
    return lift_idempotent_iter(A, x)


def lift_strict_pair(A: Algebra, xe, xf) -> IdempotentPair:
    """Orthogonal idempotents lifting ``xe`` and ``xf`` modulo the radical."""
    R = A.radical()
    xe, xf = A.field.vec(xe), A.field.vec(xf)
    if A.multiply(xe, xf) not in R or A.multiply(xf, xe) not in R:
        raise PreconditionError("the two classes are not orthogonal modulo the radical")
    e = lift_idempotent(A, xe)
    y = A.add(A.sub(A.sub(xf, A.multiply(e, xf)), A.multiply(xf, e)), A.mul(e, xf, e))
    f = lift_idempotent(A, y)
    return IdempotentPair.make(A, e, f)


@dataclass(frozen=True)
class SplitWitness:
    """Conjugators carrying the stored Levi subalgebra to one that splits ``B``."""

    conjugators: tuple
    levi_prime: Subspace
    parts: tuple  # (B ∩ S', B ∩ R)


@dataclass(frozen=True)
class ReductionResult:
    pair: IdempotentPair
    B_prime: Subspace
    core: Subspace
    conjugators: tuple
    trace: tuple = field(default_factory=tuple)


def apply_chain(A: Algebra, chain, x) -> Element:
    for q in chain:
        x = A.conjugate_by_unipotent(q, x, check=False)
    return x


def _annihilator_rows(A: Algebra, W: Subspace) -> list:
    """Rows of a matrix whose kernel is ``W``."""
    if W.dim == A.dim:
        return []
    return [list(v) for v in kernel(list(W.basis), A.field, A.dim).basis] if W.dim else [
        list(A.basis_vector(i)) for i in range(A.dim)
    ]


def _apply_rows(rows, v):
    return [sum(a * b for a, b in zip(r, v)) for r in rows]


def _layer_conjugator(A: Algebra, D: Subspace, target: Subspace, Rj: Subspace):
    """``q`` in ``Rj`` with ``c + [q, c] ∈ target`` for every basis ``c`` of ``D``, or None."""
    rows = _annihilator_rows(A, target)
    if not rows:
        return A.zero()
    if not Rj.dim:
        return A.zero() if all(c in target for c in D.basis) else None
    M, rhs = [], []
    for c in D.basis:
        cols = [_apply_rows(rows, A.commutator(r, c)) for r in Rj.basis]
        pc = _apply_rows(rows, c)
        for t in range(len(rows)):
            M.append([A.field(col[t]) for col in cols])
            rhs.append(A.field.neg((A.field(pc[t]),))[0])
    sol = solve(M, rhs, A.field, Rj.dim)
    if sol is None:
        return None
    return A.field.combo(zip(sol.particular, Rj.basis), A.dim)


def _schedule(m: int, strategy: str) -> list:
    """``(j, next)`` layers for a radical with ``R^m = 0``."""
    steps, j = [], 1
    while j < m:
        nxt = j + 1 if strategy == "layer" else min(2 * j, m)
        steps.append((j, nxt))
        j = nxt
    return steps


def bar_minimal_reduce(cand: InnerIdealCandidate, strategy: str = "layer") -> ReductionResult:
    """Strict orthogonal ``(e, f)`` with ``eAf ⊆ B`` and the same image modulo the radical."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if not is_jordan_lie(cand):
        raise NotInnerIdeal("reduction needs a Jordan-Lie inner ideal")
    A = cand.A
    trace = []
    C = core(cand)
    trace.append(("core", cand.B.dim, C.dim))
    P1 = A.one_perfect_radical()
    if not C <= P1:
        raise ReductionFailed("core is not inside the 1-perfect radical", _payload(A, cand, C))
    trace.append(("one_perfect_radical", P1.dim))
    levi = A.levi()
    pair0 = recover_pair_in(A, levi, C)
    e, f = pair0.e, pair0.f
    D = corner(A, e, f)
    if not same_bar(A, D, C):
        raise ReductionFailed("pair read off the Levi subalgebra has the wrong image", _payload(A, cand, C))
    trace.append(("levi_pair", D.dim))
    powers = [A.full()] + A.radical_powers()  # powers[j] = R^j
    m = len(powers) - 1
    chain = []
    for j, nxt in _schedule(m, strategy):
        target = C + powers[nxt]
        if all(c in target for c in D.basis):
            trace.append(("layer", j, nxt, "already"))
            continue
        q = _layer_conjugator(A, D, target, powers[j])
        if q is None:
            raise ReductionFailed(f"no conjugator at layer {j} -> {nxt}", _payload(A, cand, C, chain=chain))
        chain.append(q)
        e = A.conjugate_by_unipotent(q, e, check=False)
        f = A.conjugate_by_unipotent(q, f, check=False)
        D = corner(A, e, f)
        if not all(c in target for c in D.basis):
            raise ReductionFailed(f"conjugator at layer {j} -> {nxt} did not land", _payload(A, cand, C, chain=chain))
        trace.append(("layer", j, nxt, "conjugated"))
    if not D <= C:
        raise ReductionFailed("final eAf is not inside the core", _payload(A, cand, C, chain=chain))
    pair = IdempotentPair.make(A, e, f)
    if not (pair.orthogonal and pair.strict):
        raise ReductionFailed("final pair is not strict and orthogonal", _payload(A, cand, C, chain=chain))
    return ReductionResult(pair, D, C, tuple(chain), tuple(trace))


def _payload(A: Algebra, cand: InnerIdealCandidate, C: Subspace, chain=()) -> dict:
    return {
        "field": str(A.field),
        "dim": A.dim,
        "labels": list(A.labels),
        "sc": A.structure_constants(),
        "k": cand.view.k,
        "B": [list(b) for b in cand.B.basis],
        "core": [list(c) for c in C.basis],
        "conjugators": [list(q) for q in chain],
    }


def is_bar_minimal(cand: InnerIdealCandidate, strategy: str = "layer") -> bool:
    return bar_minimal_reduce(cand, strategy).B_prime == cand.B


def split_witness(cand: InnerIdealCandidate, result: ReductionResult | None = None) -> SplitWitness:
    """Levi subalgebra ``S'`` with ``B = (B ∩ S') ⊕ (B ∩ R)``."""
    A = cand.A
    if result is None:
        result = bar_minimal_reduce(cand)
    S = A.levi().semisimple_part()
    S_prime = A.span(apply_chain(A, result.conjugators, s) for s in S.basis)
    R = A.radical()
    BS, BR = cand.B & S_prime, cand.B & R
    if BS.dim + BR.dim != cand.B.dim:
        raise ReductionFailed("transported Levi subalgebra does not split B", _payload(A, cand, result.core, result.conjugators))
    return SplitWitness(result.conjugators, S_prime, (BS, BR))


def check_split_witness(A: Algebra, B: Subspace, w: SplitWitness) -> bool:
    S = A.levi().semisimple_part()
    moved = A.span(apply_chain(A, w.conjugators, s) for s in S.basis)
    if moved != w.levi_prime:
        return False
    BS, BR = w.parts
    R = A.radical()
    return BS == (B & w.levi_prime) and BR == (B & R) and (BS + BR) == B and not (BS & BR).dim
