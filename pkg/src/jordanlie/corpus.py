"""Deterministic test algebras and a seeded random generator.

Semidirect algebras ``S ⊕ R`` are built quiver-style: vertices are the
matrix blocks of ``S`` plus an extra vertex 0 with no semisimple part,
each arrow ``i -> j`` contributes a copy of the natural
``S_i``-``S_j``-bimodule of ``n_i × n_j`` matrices, and longer paths
(for chained nilpotency) multiply by concatenation.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import Algebra, direct_sum_table
from .errors import PreconditionError
from .inner_ideal import IdempotentPair
from .scalars import QQ, FieldSpec, Subspace, solve


def _lab(prefix: str, i: int, j: int, big: bool) -> str:
    return f"{prefix}{i + 1}_{j + 1}" if big else f"{prefix}{i + 1}{j + 1}"


def build_matrix_algebra(n: int, field: FieldSpec = QQ) -> Algebra:
    if n < 1:
        raise PreconditionError("n must be positive")
    idx = lambda i, j: i * n + j  # noqa: E731
    table = {(idx(i, j), idx(j, k)): ((idx(i, k), 1),) for i in range(n) for j in range(n) for k in range(n)}
    labels = [_lab("e", i, j, n > 9) for i in range(n) for j in range(n)]
    units = [[field.unit(n * n, idx(i, j)) for j in range(n)] for i in range(n)]
    unit = field.combo(((1, field.unit(n * n, idx(i, i))) for i in range(n)), n * n)
    return Algebra(field, n * n, table, labels, unit=unit, levi=[units], name=f"M{n}")


def build_triangular(n: int, strict: bool = False, field: FieldSpec = QQ) -> Algebra:
    """Upper triangular ``T_n`` or strictly upper triangular ``n_n`` matrices."""
    if n < 1:
        raise PreconditionError("n must be positive")
    pairs = [(i, j) for i in range(n) for j in range(n) if (i < j if strict else i <= j)]
    pos = {p: a for a, p in enumerate(pairs)}
    table = {}
    for (i, j), a in pos.items():
        for (j2, k), b in pos.items():
            if j == j2 and (i, k) in pos:
                table[(a, b)] = ((pos[(i, k)], 1),)
    labels = [_lab("e", i, j, n > 9) for i, j in pairs]
    d = len(pairs)
    levi = [] if strict else [[[field.unit(d, pos[(i, i)])]] for i in range(n)]
    return Algebra(field, d, table, labels, levi=levi, name=("n" if strict else "T") + str(n))


def build_direct_sum(algebras: Sequence[Algebra]) -> Algebra:
    if not algebras:
        raise PreconditionError("empty direct sum")
    field = algebras[0].field
    if any(A.field != field for A in algebras):
        raise PreconditionError("summands over different fields")
    table, labels, offsets = direct_sum_table(algebras)
    n = sum(A.dim for A in algebras)
    blocks = []
    for A, off in zip(algebras, offsets):
        for b in A.levi().blocks:
            blocks.append([[(0,) * off + tuple(b.units[i][j]) + (0,) * (n - off - A.dim)
                            for j in range(b.size)] for i in range(b.size)])
    name = "+".join(A.name or "?" for A in algebras)
    unit = None
    if all(A.unit is not None for A in algebras):
        unit = tuple(c for A in algebras for c in A.unit)
    return Algebra(field, n, table, labels, unit=unit, levi=blocks, name=name)


@dataclass(frozen=True)
class BimoduleSpec:
    """Arrows ``(i, j, multiplicity)`` between vertices (0 or a block index starting at 1).

    ``nilpotency`` is ``"2"`` for ``R^2 = 0`` or ``"chained"`` for path
    products up to ``chain_length`` arrows.  Loops at vertex 0 (the
    trivial bimodule) need ``allow_trivial``.
    """

    blocks: tuple = ()
    nilpotency: str = "2"
    chain_length: int = 3
    allow_trivial: bool = False


def _paths(arrows: list, max_len: int) -> list:
    """All composable arrow sequences of length 0..max_len (length 0 only at vertices >= 1)."""
    out = [[a] for a in range(len(arrows))]
    frontier = list(out)
    for _ in range(max_len - 1):
        nxt = []
        for p in frontier:
            end = arrows[p[-1]][1]
            for a, (s, _t) in enumerate(arrows):
                if s == end:
                    nxt.append(p + [a])
        out += nxt
        frontier = nxt
    return out


def semidirect_dimension(sizes: Sequence[int], spec: BimoduleSpec) -> int:
    sz = [1] + list(sizes)
    arrows = [(i, j) for i, j, m in spec.blocks for _ in range(m)]
    L = 1 if spec.nilpotency == "2" else spec.chain_length
    d = sum(n * n for n in sizes)
    for p in _paths(arrows, L):
        d += sz[arrows[p[0]][0]] * sz[arrows[p[-1]][1]]
    return d


def build_semidirect(levi_blocks: Sequence[int], spec: BimoduleSpec, field: FieldSpec = QQ,
                     name: str = "") -> Algebra:
    sizes = list(levi_blocks)
    if any(n < 1 for n in sizes):
        raise PreconditionError("block sizes must be positive")
    if spec.nilpotency not in ("2", "chained"):
        raise PreconditionError(f"unknown nilpotency {spec.nilpotency!r}")
    if spec.nilpotency == "chained" and spec.chain_length < 1:
        raise PreconditionError("chain length must be positive")
    r = len(sizes)
    for i, j, m in spec.blocks:
        if not (0 <= i <= r and 0 <= j <= r) or m < 0:
            raise PreconditionError(f"arrow {(i, j, m)} refers to an undeclared block")
        if i == 0 and j == 0 and m and not spec.allow_trivial:
            raise PreconditionError("trivial bimodule needs allow_trivial")
    sz = [1] + sizes
    arrows = [(i, j) for i, j, m in spec.blocks for _ in range(m)]
    max_len = 1 if spec.nilpotency == "2" else spec.chain_length
    paths = [tuple(p) for p in _paths(arrows, max_len)]
    # basis: (path, a, b) with path () meaning a vertex idempotent block
    elems, labels = [], []
    for v in range(1, r + 1):
        for a in range(sz[v]):
            for b in range(sz[v]):
                elems.append(((v,), a, b))
                labels.append(_lab(f"s{v}_", a, b, sz[v] > 9))
    for p in paths:
        s, t = arrows[p[0]][0], arrows[p[-1]][1]
        tag = ".".join(str(a) for a in p)
        for a in range(sz[s]):
            for b in range(sz[t]):
                elems.append((("p",) + p, a, b))
                labels.append(_lab(f"r{tag}_", a, b, max(sz[s], sz[t]) > 9))
    pos = {e: k for k, e in enumerate(elems)}

    def ends(key):
        if key[0] == "p":
            return arrows[key[1]][0], arrows[key[-1]][1]
        return key[0], key[0]

    table = {}
    for x, kx in pos.items():
        px, ax, bx = x
        sx, tx = ends(px)
        for y, ky in pos.items():
            py, ay, by = y
            sy, ty = ends(py)
            if tx != sy or bx != ay:
                continue
            if px[0] != "p":
                prod = py
            elif py[0] != "p":
                prod = px
            else:
                prod = px + py[1:]
                if len(prod) - 1 > max_len:
                    continue
            key = (prod, ax, by)
            if key in pos:
                table[(kx, ky)] = ((pos[key], 1),)
    d = len(elems)
    levi = []
    for v in range(1, r + 1):
        levi.append([[field.unit(d, pos[((v,), a, b)]) for b in range(sz[v])] for a in range(sz[v])])
    return Algebra(field, d, table, labels, levi=levi, name=name or f"S{sizes}+R")


def is_1perfect_by_construction(levi_blocks: Sequence[int], spec: BimoduleSpec) -> bool:
    return all(n != 1 for n in levi_blocks) and not any(i == 0 and j == 0 and m for i, j, m in spec.blocks)


# fixtures


def fixture_left_module(n: int = 2, field: FieldSpec = QQ) -> Algebra:
    """Radical is the natural left module, so ``RA = 0``."""
    return build_semidirect([n], BimoduleSpec(((1, 0, 1),)), field, name=f"M{n}+U10")


def fixture_right_module(n: int = 2, field: FieldSpec = QQ) -> Algebra:
    """Radical is the natural right module, so ``AR = 0``."""
    return build_semidirect([n], BimoduleSpec(((0, 1, 1),)), field, name=f"M{n}+U01")


def fixture_bimodule(n: int = 2, field: FieldSpec = QQ) -> Algebra:
    """Radical is a copy of the natural ``A/R``-bimodule."""
    return build_semidirect([n], BimoduleSpec(((1, 1, 1),)), field, name=f"M{n}+U11")


def fixture_two_blocks(n1: int = 2, n2: int = 2, field: FieldSpec = QQ) -> Algebra:
    """Radical is the natural ``S_1``-``S_2``-bimodule with ``R S_1 = S_2 R = 0``."""
    return build_semidirect([n1, n2], BimoduleSpec(((1, 2, 1),)), field, name=f"M{n1}+M{n2}+U12")


def fixture_chained(field: FieldSpec = QQ) -> Algebra:
    """Two blocks with arrows both ways and paths up to length 3."""
    return build_semidirect([2, 2], BimoduleSpec(((1, 2, 1), (2, 1, 1)), "chained", 3), field,
                            name="M2+M2 chained")


def standard_corpus(field: FieldSpec = QQ) -> dict:
    """Named deterministic algebras used throughout the tests."""
    M1, M2, M3 = (build_matrix_algebra(n, field) for n in (1, 2, 3))
    T2 = build_triangular(2, field=field)
    out = {
        "M1": M1,
        "M2": M2,
        "M3": M3,
        "T2": T2,
        "T3": build_triangular(3, field=field),
        "n3": build_triangular(3, strict=True, field=field),
        "n4": build_triangular(4, strict=True, field=field),
        "M2+M2": build_direct_sum([M2, M2]),
        "M2+M1": build_direct_sum([M2, M1]),
        "M2+T2": build_direct_sum([M2, T2]),
        "M2+U10": fixture_left_module(2, field),
        "M2+U01": fixture_right_module(2, field),
        "M2+U11": fixture_bimodule(2, field),
        "M3+U11": fixture_bimodule(3, field),
        "M2+M2+U12": fixture_two_blocks(2, 2, field),
        "M2+M3+U12": fixture_two_blocks(2, 3, field),
        "M2+M2 chained": fixture_chained(field),
        "M2+U11 chained": build_semidirect([2], BimoduleSpec(((1, 1, 1),), "chained", 2), field,
                                           name="M2+U11 chained"),
        "M2+U10+U01": build_semidirect([2], BimoduleSpec(((1, 0, 1), (0, 1, 1))), field, name="M2+U10+U01"),
        "M2+U00": build_semidirect([2], BimoduleSpec(((1, 1, 1), (0, 0, 1)), allow_trivial=True), field,
                                   name="M2+U11+U00"),
    }
    return out


# random algebras


@dataclass(frozen=True)
class RandomAlgebraParams:
    max_block: int = 3
    num_blocks: int = 2
    bimodule_density: float = 0.4
    nilpotency: str = "mixed"  # "2", "chained" or "mixed"
    max_dim: int = 16
    allow_size_one: bool = True
    allow_trivial: bool = False
    twist: bool = True
    field: FieldSpec = QQ


def random_algebra(seed: int, params: RandomAlgebraParams = RandomAlgebraParams()) -> Algebra:
    """Seeded semidirect algebra within ``params.max_dim``.

    With ``twist`` the stored Levi data is moved by a random unipotent
    conjugation, so the Levi subalgebra is not a coordinate subspace.
    """
    rng = random.Random(seed)
    lo = 1 if params.allow_size_one else 2
    nb = rng.randint(1, params.num_blocks)
    sizes = []
    for _ in range(nb):
        n = rng.randint(lo, max(lo, params.max_block))
        if sum(s * s for s in sizes) + n * n <= params.max_dim:
            sizes.append(n)
    if not sizes:
        sizes = [lo]
    nil = params.nilpotency
    if nil == "mixed":
        nil = rng.choice(["2", "chained"])
    chain = rng.randint(2, 3) if nil == "chained" else 1
    arrows: list = []
    verts = list(range(len(sizes) + 1))
    cands = [(i, j) for i in verts for j in verts if (i, j) != (0, 0) or params.allow_trivial]
    rng.shuffle(cands)
    for i, j in cands:
        if rng.random() >= params.bimodule_density:
            continue
        trial = arrows + [(i, j, 1)]
        spec = BimoduleSpec(tuple(sorted(trial)), nil, chain, params.allow_trivial)
        if semidirect_dimension(sizes, spec) <= params.max_dim:
            arrows = trial
    spec = BimoduleSpec(tuple(sorted(arrows)), nil, chain, params.allow_trivial)
    A = build_semidirect(sizes, spec, params.field, name=f"random[{seed}]")
    if params.twist and A.radical().dim:
        A = twisted(A, rng)
    return A


def random_radical_element(A: Algebra, rng: random.Random, spread: int = 2):
    R = A.radical()
    return A.field.combo(((rng.randint(-spread, spread), r) for r in R.basis), A.dim)


def elementary_conjugate(A: Algebra, x, rng: random.Random, steps: int = 3):
    """Conjugate ``x`` by ``1 + a u``, whose inverse is ``1 - a u``, for random off-diagonal matrix units ``u``."""
    blocks = [b for b in A.levi().blocks if b.size > 1]
    one = A.unit
    for _ in range(steps if blocks else 0):
        blk = rng.choice(blocks)
        i, j = rng.sample(range(blk.size), 2)
        a = rng.choice([-2, -1, 1, 2])
        g = A.add(one, A.scale(a, blk.units[i][j]))
        h = A.sub(one, A.scale(a, blk.units[i][j]))
        x = A.mul(g, x, h)
    return x


def twisted(A: Algebra, rng: random.Random) -> Algebra:
    """Same table, Levi data conjugated by a random unipotent element."""
    q = random_radical_element(A, rng)
    blocks = [[[A.conjugate_by_unipotent(q, u, check=False) for u in row] for row in b.units]
              for b in A.levi().blocks]
    return Algebra(A.field, A.dim, dict(A._table), A.labels, unit=A.unit, levi=blocks, check=False,
                   name=A.name)


# idempotent pairs


def pattern_idempotents(A: Algebra) -> list:
    """All sums of diagonal matrix units, one 0/1 pattern per Levi block."""
    L = A.levi()
    per_block = []
    for b in L.blocks:
        opts = []
        for mask in range(1 << b.size):
            opts.append([b.units[i][i] for i in range(b.size) if mask >> i & 1])
        per_block.append(opts)
    out = []
    for choice in itertools.product(*per_block) if per_block else [()]:
        terms = [(1, u) for grp in choice for u in grp]
        out.append(A.field.combo(terms, A.dim))
    return out


def enumerate_idempotent_pairs(A: Algebra, budget: int = 10_000, seed: int = 0,
                               orthogonal_only: bool = True, conjugates: int = 0) -> tuple:
    """``(pairs, truncated)``.

    Pattern pairs come first (with disjoint patterns when
    ``orthogonal_only``); ``conjugates`` extra rounds add each pattern pair
    moved by one seeded unipotent and, unless ``orthogonal_only``, with
    ``e`` and ``f`` moved by independent unipotents.
    """
    rng = random.Random(seed)
    idems = pattern_idempotents(A)
    base = []
    for e in idems:
        for f in idems:
            if orthogonal_only and (any(A.multiply(e, f)) or any(A.multiply(f, e))):
                continue
            base.append((e, f))
    pairs: list = []
    truncated = False

    def push(e, f) -> bool:
        nonlocal truncated
        if len(pairs) >= budget:
            truncated = True
            return False
        pairs.append(IdempotentPair.make(A, e, f))
        return True

    for e, f in base:
        if not push(e, f):
            return pairs, truncated
    has_rad = A.radical().dim > 0
    for _ in range(conjugates if has_rad else 0):
        for e, f in base:
            q = random_radical_element(A, rng)
            if not push(A.conjugate_by_unipotent(q, e, check=False), A.conjugate_by_unipotent(q, f, check=False)):
                return pairs, truncated
            if not orthogonal_only:
                q2 = random_radical_element(A, rng)
                if not push(A.conjugate_by_unipotent(q, e, check=False), A.conjugate_by_unipotent(q2, f, check=False)):
                    return pairs, truncated
    return pairs, truncated


# the non-regular example


@dataclass(frozen=True)
class NonRegularExample:
    algebra: Algebra  # the subalgebra A_1
    ambient: Algebra  # n_4 ⊕ n_4'
    B: Subspace
    generators: tuple
    elements: dict = field(default_factory=dict)


def algebra_on_basis(A: Algebra, vectors: Sequence, labels: Sequence[str], check: bool = True) -> Algebra:
    """The subalgebra spanned by ``vectors`` with exactly that basis."""
    M = [list(r) for r in zip(*vectors)]
    k = len(vectors)

    def coords(w):
        sol = solve(M, w, A.field, k)
        if sol is None:
            raise PreconditionError("span of the given vectors is not closed under multiplication")
        if sol.kernel.dim:
            raise PreconditionError("vectors are linearly dependent")
        return sol.particular

    table = {}
    for a, u in enumerate(vectors):
        for b, v in enumerate(vectors):
            w = A.multiply(u, v)
            if any(w):
                c = coords(w)
                table[(a, b)] = tuple((t, x) for t, x in enumerate(c) if x)
    return Algebra(A.field, k, table, labels, check=check)


def example_nr(field: FieldSpec = QQ) -> NonRegularExample:
    """A Jordan-Lie inner ideal that is not regular, inside a nilpotent algebra."""
    n4 = build_triangular(4, strict=True, field=field)
    A = build_direct_sum([n4, n4])
    d = A.dim

    def e(i, j, prime=False):
        lab = f"e{i}{j}@{1 if prime else 0}"
        return A.basis_vector(A.labels.index(lab))

    add = A.add
    b1 = add(e(1, 2), e(3, 4, True))
    b2 = add(e(3, 4), e(1, 2, True))
    a = add(e(2, 3), e(2, 3, True))
    sq = A.square()
    assert sq.dim == 6
    if A.powers(A.full())[3].dim != 0:
        raise AssertionError("A^4 should vanish")
    square_basis = [e(1, 3), e(1, 4), e(2, 4), e(1, 3, True), e(1, 4, True), e(2, 4, True)]
    assert A.span(square_basis) == sq
    vectors = [b1, b2, a] + square_basis
    labels = ["b1", "b2", "a", "e13", "e14", "e24", "e'13", "e'14", "e'24"]
    A1 = algebra_on_basis(A, vectors, labels)
    assert A1.dim == sq.dim + 3 and d == 12
    B1 = A1.basis_vector
    b = A1.add(B1(4), B1(7))
    gens = (B1(0), B1(1), b)
    B = A1.span(gens)
    elements = {"b1": B1(0), "b2": B1(1), "a": B1(2), "b": b, "e14": B1(4)}
    return NonRegularExample(A1, A, B, gens, elements)


def scrambled(A: Algebra, seed: int) -> tuple:
    """``(A', P)``: ``A`` in a random unimodular basis ``P`` (rows are old coordinates), without Levi data."""
    rng = random.Random(seed)
    n = A.dim
    perm = list(range(n))
    rng.shuffle(perm)
    rows = []
    for i in range(n):
        v = [0] * n
        v[perm[i]] = 1
        for j in range(i + 1, n):
            v[perm[j]] = rng.randint(-1, 1)
        rows.append(A.field.vec(v))
    return algebra_on_basis(A, rows, [f"c{i}" for i in range(n)]), rows
