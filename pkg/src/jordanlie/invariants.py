"""Reports for single candidates and the invariant suite run by ``fuzz``.

Every check carries a short descriptive label; a failing check becomes a
:class:`Violation` holding enough data to rebuild the input.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator

from .algebra import Algebra
from .corpus import enumerate_idempotent_pairs, random_radical_element
from .errors import JordanLieError, NotAssociative, PreconditionError
from .inner_ideal import (
    IdempotentPair,
    InnerIdealCandidate,
    InnerIdealReport,
    corner,
    core,
    eAf,
    is_inner_ideal,
    is_jordan_lie,
    is_L_perfect,
    pair_relations,
    reduce_pair_under,
    regular_violation,
    regular_witness,
)
from .lie import bar_image, derived_limit, derived_of, same_bar
from .reduction import bar_minimal_reduce, check_split_witness, split_witness

LABELS = {
    "inner": "inner ideal: [B,[B,L]] inside B",
    "jordan_lie": "Jordan-Lie: B^2 = 0 and {B,L,B} inside B",
    "regular": "regular: B^2 = 0 and BAB inside B",
    "L_perfect": "L-perfect: B equals [B,[B,L]]",
    "reduce": "bar-minimal subideal eAf for a strict orthogonal pair",
    "bar_minimal": "bar-minimal iff B = eAf for a strict orthogonal pair",
    "reduced_regular": "bar-minimal Jordan-Lie inner ideals are regular",
    "split": "Jordan-Lie inner ideals split over a conjugate Levi subalgebra",
    "pair_order": "eAf inside e'Af' iff e'e = e and ff' = f, for strict (e,f)",
    "pair_nonzero": "strict nonzero pairs give nonzero eAf",
    "pair_reduce": "a dominated pair can be replaced by one below it with the same eAf",
    "pair_unique": "dominated strict pairs with the same bar coincide",
    "p1_choice": "1-perfect radical does not depend on the descent order",
    "p1_square": "1-perfect radical is idempotent",
    "p1_quotient": "quotient by the 1-perfect radical has no 1-perfect ideal",
    "p1_solvable": "quotient by the 1-perfect radical is Lie solvable",
    "p1_derived": "stable derived member equals [P1, P1]",
    "associativity": "structure constants define an associative product",
    "radical": "radical is a nilpotent ideal with semisimple quotient",
}


@dataclass(frozen=True)
class Violation:
    check: str
    detail: str
    data: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        return LABELS.get(self.check, self.check)


def analyze(cand: InnerIdealCandidate, strategy: str = "layer") -> InnerIdealReport:
    """Every predicate and witness that applies to ``cand``."""
    A, B = cand.A, cand.B
    checks: dict = {}
    inner = is_inner_ideal(cand)
    checks[LABELS["inner"]] = inner
    jl = inner and is_jordan_lie(cand)
    checks[LABELS["jordan_lie"]] = jl
    violation = regular_violation(cand)
    regular = violation is None
    checks[LABELS["regular"]] = regular
    witness = regular_witness(cand) if regular else None
    perfect = inner and is_L_perfect(cand)
    checks[LABELS["L_perfect"]] = perfect
    bar = bar_image(A, B)
    if not inner:
        return InnerIdealReport(False, False, regular, False, None, None, bar, witness=witness,
                                violation=violation, checks=checks)
    C = core(cand)
    pair = split = minimal = None
    if jl:
        res = bar_minimal_reduce(cand, strategy)
        pair = res.pair
        minimal = res.B_prime == B
        checks[LABELS["reduce"]] = True
        checks[LABELS["bar_minimal"]] = minimal
        checks[LABELS["reduced_regular"]] = regular_violation(cand.with_subspace(res.B_prime)) is None
        split = split_witness(cand, res)
        checks[LABELS["split"]] = check_split_witness(A, B, split)
    return InnerIdealReport(inner, jl, regular, perfect, minimal, C, bar, pair, witness, split, violation, checks)


# candidate generation


def jordan_lie_candidates(A: Algebra, rng: random.Random, pair_budget: int = 40,
                          extra_trials: int = 2) -> Iterator[tuple]:
    """``(kind, candidate)`` with kind ``eAf``, ``conjugated``, ``enlarged`` or ``core``.

    ``eAf`` candidates use pattern pairs in the stored Levi subalgebra,
    ``conjugated`` ones move such a pair by a random unipotent, and
    ``enlarged`` ones add random radical vectors to ``eAf`` and keep the
    result when it is still a Jordan-Lie inner ideal; ``core`` is the core
    of an enlarged candidate or of one from :func:`inner_ideal_cores`.
    """
    pairs, _ = enumerate_idempotent_pairs(A, pair_budget, seed=rng.randrange(1 << 30))
    has_rad = A.radical().dim > 0
    for p in pairs:
        if not (p.strict and p.orthogonal):
            continue
        base = eAf(A, p)
        if not base.B.dim:
            continue
        yield "eAf", base
        if not has_rad:
            continue
        q = random_radical_element(A, rng)
        e2 = A.conjugate_by_unipotent(q, p.e, check=False)
        f2 = A.conjugate_by_unipotent(q, p.f, check=False)
        yield "conjugated", eAf(A, IdempotentPair.make(A, e2, f2))
        for _ in range(extra_trials):
            extra = [random_radical_element(A, rng) for _ in range(rng.randint(1, 2))]
            B = base.B + A.span(extra)
            if B == base.B or not B <= base.L:
                continue
            cand = base.with_subspace(B)
            if not is_jordan_lie(cand):
                continue
            yield "enlarged", cand
            C = core(cand)
            if C != B:
                yield "core", cand.with_subspace(C)
    if has_rad:
        yield from inner_ideal_cores(A, rng, pairs)


def layered_corner(A: Algebra, e, f, j: int):
    """``e R^j f``; square-zero and closed under ``b a b'`` when ``fe = 0``."""
    powers = A.radical_powers()
    P = powers[min(j, len(powers)) - 1]
    return A.span(A.multiply(A.multiply(e, x), f) for x in P.basis)


def inner_ideal_cores(A: Algebra, rng: random.Random, pairs) -> Iterator[tuple]:
    """``("core", candidate)`` for cores of random Jordan-Lie inner ideals.

    The inner ideals are ``e R^j f`` for orthogonal pairs and ``eAf`` for
    orthogonal pairs that are not strict, each moved by a random unipotent.
    Zero cores are skipped.
    """
    depth = len(A.radical_powers()) - 1
    for p in pairs:
        if not p.orthogonal:
            continue
        q = random_radical_element(A, rng)
        e = A.conjugate_by_unipotent(q, p.e, check=False)
        f = A.conjugate_by_unipotent(q, p.f, check=False)
        spaces = [layered_corner(A, e, f, rng.randint(1, depth))]
        if not p.strict:
            spaces.append(corner(A, e, f))
        for B in spaces:
            cand = InnerIdealCandidate.make(A, B.basis)
            if not B.dim or not is_jordan_lie(cand):
                continue
            C = core(cand)
            if C.dim:
                yield "core", cand.with_subspace(C)


# invariant checks


def check_candidate(cand: InnerIdealCandidate, kind: str, strategies=("layer",)) -> list:
    """Reduction, bar-minimality, regularity and splitting for one Jordan-Lie candidate."""
    A, B = cand.A, cand.B
    out: list = []

    def fail(check, detail):
        out.append(Violation(check, f"{kind}: {detail}", {"B": [list(b) for b in B.basis]}))

    results = []
    for strategy in strategies:
        try:
            res = bar_minimal_reduce(cand, strategy)
        except JordanLieError as exc:
            fail("reduce", f"{strategy}: {exc}")
            return out
        results.append(res)
        p = res.pair
        if not (p.strict and p.orthogonal):
            fail("reduce", f"{strategy}: pair is not strict and orthogonal")
        D = corner(A, p.e, p.f)
        if D != res.B_prime or not D <= B:
            fail("reduce", f"{strategy}: eAf is not inside B")
        if not same_bar(A, D, B):
            fail("reduce", f"{strategy}: bars differ")
        again = bar_minimal_reduce(cand.with_subspace(D), strategy)
        if again.B_prime != D:
            fail("bar_minimal", f"{strategy}: eAf is not bar-minimal")
    if len(results) > 1:
        a, b = results[0], results[1]
        if not same_bar(A, a.B_prime, b.B_prime):
            fail("reduce", "strategies disagree on the bar image")
    res = results[0]
    if kind in ("eAf", "conjugated") and res.B_prime != B:
        fail("bar_minimal", "eAf input was not recognised as bar-minimal")
    reduced = cand.with_subspace(res.B_prime)
    try:
        regular_witness(reduced)
    except PreconditionError as exc:
        fail("reduced_regular", str(exc))
    try:
        w = split_witness(cand, res)
        if not check_split_witness(A, B, w):
            fail("split", "witness does not check")
    except JordanLieError as exc:
        fail("split", str(exc))
    return out


def check_pairs(A: Algebra, rng: random.Random, budget: int = 30) -> tuple:
    """Order, non-vanishing, reduction and uniqueness properties of idempotent pairs.

    Returns ``(violations, comparisons)``.
    """
    out: list = []
    pairs, _ = enumerate_idempotent_pairs(A, budget, seed=rng.randrange(1 << 30), orthogonal_only=False,
                                          conjugates=1)
    corners = [corner(A, p.e, p.f) for p in pairs]
    bars = [bar_image(A, c) for c in corners]
    comps = 0
    for i, p in enumerate(pairs):
        if not p.strict:
            continue
        if (any(p.e) or any(p.f)) and not corners[i].dim:
            out.append(Violation("pair_nonzero", f"pair {i} has eAf = 0"))
        for j, q in enumerate(pairs):
            comps += 1
            rel = pair_relations(A, p, q)
            if (corners[i] <= corners[j]) != rel.leq_LR:
                out.append(Violation("pair_order", f"pairs {i}, {j}", {"p": p.as_tuple(), "q": q.as_tuple()}))
                continue
            if rel.leq_LR:
                try:
                    reduce_pair_under(A, p, q)
                except PreconditionError as exc:
                    out.append(Violation("pair_reduce", f"pairs {i}, {j}: {exc}"))
            if rel.leq and q.strict and p != q and bars[i] == bars[j] and (p.e, p.f) != (q.e, q.f):
                out.append(Violation("pair_unique", f"pairs {i}, {j}"))
    return out, comps


def check_one_perfect(A: Algebra, seeds=(0, 1, 2)) -> list:
    out: list = []
    P = A.one_perfect_radical()
    for s in seeds[1:]:
        if A.one_perfect_radical(seed=s) != P:
            out.append(Violation("p1_choice", f"seed {s} gives a different result"))
    if A.subspace_product(P, P) != P:
        out.append(Violation("p1_square", "P1^2 != P1"))
    Q = A.quotient(P).target
    if Q.one_perfect_radical().dim:
        out.append(Violation("p1_quotient", "A/P1 has a nonzero 1-perfect ideal"))
    if not Q.is_lie_solvable():
        out.append(Violation("p1_solvable", "A/P1 is not Lie solvable"))
    if derived_limit(A) != derived_of(A, P, 1):
        out.append(Violation("p1_derived", "A^(inf) != [P1, P1]"))
    return out


def check_radical(A: Algebra) -> list:
    R = A.radical()
    if not A.is_ideal(R) or not A.is_nilpotent_subspace(R):
        return [Violation("radical", "radical is not a nilpotent ideal")]
    if A.quotient(R).target.radical().dim:
        return [Violation("radical", "quotient by the radical is not semisimple")]
    return []


def check_algebra(A: Algebra, rng: random.Random, pair_budget: int = 30, strategies=("layer", "doubling")) -> tuple:
    """Run the whole suite; returns ``(violations, counts)``."""
    out = list(check_radical(A))
    out += check_one_perfect(A)
    v, comps = check_pairs(A, rng, pair_budget)
    out += v
    counts = {"comparisons": comps}
    for kind, cand in jordan_lie_candidates(A, rng, pair_budget):
        counts[kind] = counts.get(kind, 0) + 1
        out += check_candidate(cand, kind, strategies)
    return out, counts


def mutate(A: Algebra, rng: random.Random) -> tuple:
    """A copy of ``A``'s table with one structure constant changed, and a description."""
    table = {k: dict(v) for k, v in A._table.items()}
    i, j, k = rng.randrange(A.dim), rng.randrange(A.dim), rng.randrange(A.dim)
    cell = table.setdefault((i, j), {})
    cell[k] = A.field(cell.get(k, 0) + 1)
    return table, f"b{i}*b{j} gained 1 on b{k}"


def build_checked(A: Algebra, table) -> tuple:
    """Rebuild with associativity checking; returns ``(algebra or None, violations)``."""
    try:
        B = Algebra(A.field, A.dim, table, A.labels, check=True, name=A.name)
    except NotAssociative as exc:
        return None, [Violation("associativity", str(exc), {"triple": list(exc.triple)})]
    return B, []
