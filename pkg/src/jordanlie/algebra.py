"""Associative algebras given by structure constants.

An :class:`Algebra` stores the products of basis vectors sparsely and
computes everything else (radical, Levi data, centre, 1-perfect radical)
on demand.  Lazily computed values are cached under a lock, so an
instance can be shared between threads once built.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    DimensionMismatch,
    JordanLieError,
    NotAnIdeal,
    NotAssociative,
    PreconditionError,
    UnsupportedCharacteristic,
)
from .scalars import (
    QQ,
    Echelon,
    FieldSpec,
    Subspace,
    canonicalize,
    complement_basis,
    full_subspace,
    inverse,
    kernel,
    zero_subspace,
)

Element = tuple


def _clean_table(field: FieldSpec, table) -> dict:
    """Normalise a product table to ``{(i, j): ((k, c), ...)}`` with c != 0."""
    items = table.items() if isinstance(table, Mapping) else table
    out: dict = {}
    for key, terms in items:
        i, j = key
        acc: dict = {}
        if isinstance(terms, Mapping):
            terms = terms.items()
        for k, c in terms:
            acc[k] = acc.get(k, 0) + field(c)
        clean = tuple(sorted((k, field(c)) for k, c in acc.items() if field(c)))
        if clean:
            prev = out.get((i, j))
            if prev:
                merged = dict(prev)
                for k, c in clean:
                    merged[k] = field(merged.get(k, 0) + c)
                clean = tuple(sorted((k, c) for k, c in merged.items() if c))
            out[(i, j)] = clean
    return out


class Algebra:
    """A finite-dimensional associative algebra over Q or F_p.

    ``table`` maps basis index pairs ``(i, j)`` to the expansion of
    ``b_i b_j`` as ``(k, c)`` pairs.  Missing pairs multiply to zero.
    ``levi`` may carry known matrix-unit data (a list of square arrays of
    elements); it is verified before use.
    """

    def __init__(
        self,
        field: FieldSpec,
        dim: int,
        table,
        labels: Sequence[str] | None = None,
        unit: Sequence | None = None,
        levi: Sequence | None = None,
        check: bool = True,
        name: str = "",
    ):
        if dim < 0:
            raise DimensionMismatch("negative dimension")
        self.field = field
        self.dim = dim
        self.name = name
        self.labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(dim))
        if len(self.labels) != dim:
            raise DimensionMismatch(f"{len(self.labels)} labels for dimension {dim}")
        self._table = _clean_table(field, table)
        for (i, j), terms in self._table.items():
            if not (0 <= i < dim and 0 <= j < dim) or any(not 0 <= k < dim for k, _ in terms):
                raise DimensionMismatch(f"structure constant index out of range at {(i, j)}")
        rows: list[list] = [[] for _ in range(dim)]
        for (i, j), terms in sorted(self._table.items()):
            rows[i].append((j, terms))
        self._rows = rows
        self.unit = field.vec(unit) if unit is not None else None
        if self.unit is not None and len(self.unit) != dim:
            raise DimensionMismatch("unit has the wrong length")
        self._levi_hint = levi
        self._lock = threading.RLock()
        self._cache: dict = {}
        if check:
            self.check_associative()
            if self.unit is not None:
                self.check_unit()

    # construction checks

    def check_associative(self):
        n = self.dim
        basis = [self.field.unit(n, i) for i in range(n)]
        prods = [[self.multiply(basis[i], basis[j]) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    left = self.multiply(prods[i][j], basis[k])
                    right = self.multiply(basis[i], prods[j][k])
                    if left != right:
                        raise NotAssociative((i, j, k), left, right)

    def check_unit(self):
        for i in range(self.dim):
            b = self.basis_vector(i)
            if self.multiply(self.unit, b) != b or self.multiply(b, self.unit) != b:
                raise PreconditionError("declared unit is not a two-sided identity")

    # elementary access

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<Algebra{tag} dim={self.dim} over {self.field}>"

    def basis_vector(self, i: int) -> Element:
        return self.field.unit(self.dim, i)

    def basis(self) -> list:
        return [self.basis_vector(i) for i in range(self.dim)]

    def zero(self) -> Element:
        return (0,) * self.dim

    def element(self, coeffs: Mapping[str, object]) -> Element:
        """Element from a ``{label: coefficient}`` mapping."""
        idx = {lab: i for i, lab in enumerate(self.labels)}
        v = [0] * self.dim
        for lab, c in coeffs.items():
            v[idx[lab]] += self.field(c)
        return self.field.normalize(v)

    def fmt(self, x: Sequence) -> str:
        out = ""
        for i, c in enumerate(x):
            if not c:
                continue
            neg = (not self.field.p) and c < 0
            mag = -c if neg else c
            term = self.labels[i] if mag == 1 else f"{mag}*{self.labels[i]}"
            if not out:
                out = f"-{term}" if neg else term
            else:
                out += f" - {term}" if neg else f" + {term}"
        return out or "0"

    def structure_constants(self):
        """Sorted ``(i, j, k, c)`` entries of the product table."""
        return [(i, j, k, c) for (i, j), terms in sorted(self._table.items()) for k, c in terms]

    def product_terms(self, i: int, j: int) -> tuple:
        return self._table.get((i, j), ())

    def same_table(self, other: "Algebra") -> bool:
        return self.field == other.field and self.dim == other.dim and self._table == other._table

    def _cached(self, key, fn):
        try:
            return self._cache[key]
        except KeyError:
            pass
        with self._lock:
            if key not in self._cache:
                self._cache[key] = fn()
            return self._cache[key]

    def _check(self, *xs):
        for x in xs:
            if len(x) != self.dim:
                raise DimensionMismatch(f"element of length {len(x)} in an algebra of dimension {self.dim}")

    # products

    def multiply(self, a: Sequence, b: Sequence) -> Element:
        self._check(a, b)
        out = [0] * self.dim
        rows = self._rows
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, terms in rows[i]:
                bj = b[j]
                if bj:
                    c = ai * bj
                    for k, s in terms:
                        out[k] += c * s
        return self.field.normalize(out)

    def mul(self, *xs) -> Element:
        out = xs[0]
        for x in xs[1:]:
            out = self.multiply(out, x)
        return out

    def commutator(self, a: Sequence, b: Sequence) -> Element:
        return self.field.sub(self.multiply(a, b), self.multiply(b, a))

    def triple_product(self, b: Sequence, x: Sequence, bp: Sequence) -> Element:
        """Jordan triple product ``b x b' + b' x b``."""
        return self.field.add(self.mul(b, x, bp), self.mul(bp, x, b))

    def add(self, *xs) -> Element:
        out = xs[0]
        for x in xs[1:]:
            out = self.field.add(out, x)
        return out

    def sub(self, a, b) -> Element:
        return self.field.sub(a, b)

    def scale(self, c, a) -> Element:
        return self.field.scale(self.field(c), a)

    def power(self, a, k: int) -> Element:
        if k < 1:
            raise ValueError("power needs k >= 1")
        out = a
        for _ in range(k - 1):
            out = self.multiply(out, a)
        return out

    def is_idempotent(self, e) -> bool:
        return self.multiply(e, e) == tuple(e)

    def left_matrix(self, a) -> list:
        """Matrix (rows indexed by output coordinate) of ``x -> a x``."""
        cols = [self.multiply(a, self.basis_vector(j)) for j in range(self.dim)]
        return [list(r) for r in zip(*cols)] if cols else []

    def trace_left(self, a) -> object:
        total = 0
        for j in range(self.dim):
            total += self.multiply(a, self.basis_vector(j))[j]
        return self.field(total)

    # subspaces

    def span(self, vectors: Iterable) -> Subspace:
        return canonicalize(vectors, self.field, self.dim)

    def full(self) -> Subspace:
        return full_subspace(self.dim, self.field)

    def zero_space(self) -> Subspace:
        return zero_subspace(self.dim, self.field)

    def subspace_product(self, U: Subspace, V: Subspace) -> Subspace:
        ech = Echelon(self.field, self.dim)
        for u in U.basis:
            for v in V.basis:
                if ech.rank == self.dim:
                    break
                ech.add(self.multiply(u, v))
        return ech.subspace()

    def bracket_span(self, U: Subspace, V: Subspace) -> Subspace:
        """Span of all commutators ``[u, v]``."""
        ech = Echelon(self.field, self.dim)
        for u in U.basis:
            for v in V.basis:
                ech.add(self.commutator(u, v))
        return ech.subspace()

    def square(self) -> Subspace:
        return self._cached("square", lambda: self.subspace_product(self.full(), self.full()))

    def ideal_closure(self, X: Subspace, side: str = "twosided") -> Subspace:
        if side not in ("left", "right", "twosided"):
            raise ValueError(f"unknown side {side!r}")
        ech = X.echelon()
        todo = list(X.basis)
        basis = self.basis()
        while todo:
            x = todo.pop()
            prods = []
            if side in ("left", "twosided"):
                prods += [self.multiply(b, x) for b in basis]
            if side in ("right", "twosided"):
                prods += [self.multiply(x, b) for b in basis]
            for y in prods:
                if ech.add(y):
                    todo.append(y)
        return ech.subspace()

    def is_ideal(self, X: Subspace, side: str = "twosided") -> bool:
        basis = self.basis()
        for x in X.basis:
            for b in basis:
                if side in ("left", "twosided") and self.multiply(b, x) not in X:
                    return False
                if side in ("right", "twosided") and self.multiply(x, b) not in X:
                    return False
        return True

    def is_subalgebra(self, X: Subspace) -> bool:
        return all(self.multiply(u, v) in X for u in X.basis for v in X.basis)

    def powers(self, X: Subspace) -> list:
        """``[X, X^2, X^3, ...]`` until the sequence stabilises (ending at 0 when nilpotent)."""
        out = [X]
        while out[-1].dim:
            nxt = self.subspace_product(out[-1], X)
            if nxt == out[-1]:
                break
            out.append(nxt)
        return out

    def is_nilpotent_subspace(self, X: Subspace) -> bool:
        return self.powers(X)[-1].dim == 0

    # center, unitalization, quotients, subalgebras

    def center(self) -> Subspace:
        def compute():
            n = self.dim
            rows = []
            for i in range(n):
                b = self.basis_vector(i)
                cols = [self.commutator(self.basis_vector(l), b) for l in range(n)]
                rows.extend(list(r) for r in zip(*cols))
            return kernel(rows, self.field, n) if rows else self.full()

        return self._cached("center", compute)

    def unitalize(self) -> "Algebra":
        """Adjoin an external identity as the last basis vector."""

        def compute():
            n = self.dim
            table = {key: terms for key, terms in self._table.items()}
            for i in range(n):
                table[(n, i)] = ((i, 1),)
                table[(i, n)] = ((i, 1),)
            table[(n, n)] = ((n, 1),)
            unit = self.field.unit(n + 1, n)
            return Algebra(self.field, n + 1, table, list(self.labels) + ["1"], unit=unit, check=False,
                           name=f"{self.name}^" if self.name else "")

        return self._cached("unitalization", compute)

    def embed_in_unitalization(self, x) -> Element:
        return tuple(x) + (0,)

    def quotient(self, ideal: Subspace) -> "QuotientMap":
        if ideal.ambient_dim != self.dim:
            raise DimensionMismatch("ideal lives in a different space")
        if not self.is_ideal(ideal):
            raise NotAnIdeal("subspace is not a two-sided ideal")
        return QuotientMap.build(self, ideal)

    def subalgebra(self, X: Subspace, check: bool = True) -> "Algebra":
        """``X`` as an algebra in its own right, on the canonical basis of ``X``."""
        if check and not self.is_subalgebra(X):
            raise PreconditionError("subspace is not closed under multiplication")
        piv = X.pivots
        table = {}
        for a, u in enumerate(X.basis):
            for b, v in enumerate(X.basis):
                w = self.multiply(u, v)
                terms = tuple((k, w[pc]) for k, pc in enumerate(piv) if w[pc])
                if terms:
                    table[(a, b)] = terms
        labels = [f"s{a}" for a in range(X.dim)]
        return Algebra(self.field, X.dim, table, labels, check=False)

    # radical and Levi data

    def radical(self) -> Subspace:
        return self._cached("radical", self._compute_radical)

    def _compute_radical(self) -> Subspace:
        n = self.dim
        p = self.field.p
        if p and p <= n:
            raise UnsupportedCharacteristic(
                f"radical needs characteristic 0 or p > dim; got p={p}, dim={n}"
            )
        if n == 0:
            return self.zero_space()
        tr = [self.trace_left(self.basis_vector(k)) for k in range(n)]
        rows = []
        for j in range(n):
            row = []
            for l in range(n):
                s = 0
                for k, c in self.product_terms(l, j):
                    s += c * tr[k]
                row.append(self.field(s))
            rows.append(row)
        rows.append(list(tr))
        R = kernel(rows, self.field, n)
        if not self.is_ideal(R) or not self.is_nilpotent_subspace(R):
            if p:
                raise UnsupportedCharacteristic(
                    f"trace form criterion fails in characteristic {p} for this algebra"
                )
            raise JordanLieError("trace radical is not a nilpotent ideal")
        return R

    def radical_powers(self) -> list:
        """``[R, R^2, ..., 0]`` for the radical ``R``."""
        return self._cached("radical_powers", lambda: self.powers(self.radical()))

    def levi(self) -> "LeviDecomposition":
        def compute():
            from .wedderburn import levi_decomposition

            return levi_decomposition(self, self._levi_hint)

        return self._cached("levi", compute)

    def is_semisimple(self) -> bool:
        return self.radical().dim == 0

    def is_lie_solvable(self) -> bool:
        L = self.full()
        while L.dim:
            nxt = self.bracket_span(L, L)
            if nxt == L:
                return False
            L = nxt
        return True

    def is_1perfect(self) -> bool:
        if self.square().dim != self.dim:
            return False
        return all(b.size != 1 for b in self.levi().blocks)

    def codim1_ideal(self, rng: random.Random) -> Subspace | None:
        """Some ideal of codimension 1, or None when the algebra is 1-perfect."""
        sq = self.square()
        if sq.dim < self.dim:
            funcs = kernel(list(sq.basis), self.field, self.dim) if sq.dim else self.full()
            while True:
                phi = self.field.combo(((rng.randint(-3, 3), v) for v in funcs.basis), self.dim)
                if any(phi):
                    break
            return kernel([phi], self.field, self.dim)
        L = self.levi()
        ones = [r for r, b in enumerate(L.blocks) if b.size == 1]
        if not ones:
            return None
        r = rng.choice(ones)
        return kernel([L.coordinate_functional(r, 0, 0)], self.field, self.dim)

    def one_perfect_radical(self, seed: int = 0) -> Subspace:
        """The largest 1-perfect ideal, reached by descending through codimension-1 ideals."""
        if seed == 0:
            return self._cached("p1", lambda: self._descend(0))
        return self._descend(seed)

    def _descend(self, seed: int) -> Subspace:
        rng = random.Random(seed)
        C = self
        emb = self.basis()
        while True:
            H = C.codim1_ideal(rng)
            if H is None:
                break
            C = C.subalgebra(H, check=False)
            emb = [self.field.combo(zip(h, emb), self.dim) for h in H.basis]
        return self.span(emb)

    # unipotent conjugation

    def unipotent_inverse_tail(self, q) -> Element:
        """``w`` with ``(1 + q)^{-1} = 1 + w``, i.e. ``w = sum_{i>=1} (-q)^i``."""
        mq = self.field.neg(q)
        w = self.zero()
        term = mq
        for _ in range(self.dim + 1):
            if not any(term):
                return w
            w = self.field.add(w, term)
            term = self.multiply(term, mq)
        raise PreconditionError("element is not nilpotent")

    def conjugate_by_unipotent(self, q, x, check: bool = True) -> Element:
        """``(1 + q) x (1 + q)^{-1}`` for ``q`` in the radical."""
        self._check(q, x)
        if check and q not in self.radical():
            raise PreconditionError("conjugator must lie in the radical")
        w = self.unipotent_inverse_tail(q)
        qx = self.multiply(q, x)
        return self.add(x, qx, self.multiply(x, w), self.multiply(qx, w))

    def conjugate_subspace(self, q, U: Subspace, check: bool = True) -> Subspace:
        if check and q not in self.radical():
            raise PreconditionError("conjugator must lie in the radical")
        return self.span(self.conjugate_by_unipotent(q, u, check=False) for u in U.basis)


@dataclass(frozen=True)
class MatrixUnitSystem:
    """Elements ``units[i][j]`` with ``e_ij e_kl = delta_jk e_il``."""

    size: int
    units: tuple

    def unit(self, i: int, j: int) -> Element:
        return self.units[i][j]

    def flat(self) -> list:
        return [self.units[i][j] for i in range(self.size) for j in range(self.size)]

    def identity(self, field: FieldSpec, dim: int) -> Element:
        return field.combo(((1, self.units[i][i]) for i in range(self.size)), dim)


@dataclass(frozen=True)
class LeviDecomposition:
    """Matrix-unit systems spanning a Levi subalgebra, plus the radical.

    ``coords`` is the inverse of the basis matrix whose columns are the
    matrix units (block by block, row-major) followed by the radical basis;
    it turns an element into block coordinates.
    """

    field: FieldSpec
    dim: int
    blocks: tuple
    radical: Subspace
    coords: tuple

    @classmethod
    def build(cls, field: FieldSpec, dim: int, blocks: Sequence[MatrixUnitSystem], radical: Subspace):
        cols = [u for b in blocks for u in b.flat()] + list(radical.basis)
        if len(cols) != dim:
            raise JordanLieError("matrix units and radical do not span the algebra")
        if dim == 0:
            return cls(field, 0, tuple(blocks), radical, ())
        M = [list(r) for r in zip(*cols)]
        inv = inverse(M, field)
        return cls(field, dim, tuple(blocks), radical, tuple(tuple(r) for r in inv))

    @property
    def sizes(self) -> tuple:
        return tuple(b.size for b in self.blocks)

    def _offset(self, r: int) -> int:
        return sum(b.size ** 2 for b in self.blocks[:r])

    def coordinate_functional(self, r: int, i: int, j: int) -> tuple:
        return self.coords[self._offset(r) + i * self.blocks[r].size + j]

    def block_coords(self, x) -> list:
        """Matrices of the image of ``x`` in each simple component of A/R."""
        flat = [self.field.dot(row, x) for row in self.coords[: self.semisimple_dim]]
        out, pos = [], 0
        for b in self.blocks:
            n = b.size
            out.append([flat[pos + i * n: pos + (i + 1) * n] for i in range(n)])
            pos += n * n
        return out

    @property
    def semisimple_dim(self) -> int:
        return sum(b.size ** 2 for b in self.blocks)

    def semisimple_part(self) -> Subspace:
        return canonicalize([u for b in self.blocks for u in b.flat()], self.field, self.dim)

    def block_subspace(self, r: int) -> Subspace:
        return canonicalize(self.blocks[r].flat(), self.field, self.dim)

    def from_block_coords(self, mats: Sequence) -> Element:
        """Element of the Levi subalgebra with the given block matrices."""
        terms = []
        for b, m in zip(self.blocks, mats):
            for i in range(b.size):
                for j in range(b.size):
                    if m[i][j]:
                        terms.append((m[i][j], b.units[i][j]))
        return self.field.combo(terms, self.dim)

    def project_to_levi(self, x) -> Element:
        return self.from_block_coords(self.block_coords(x))

    def block_support(self, x) -> tuple:
        """For each block, whether the image of ``x`` there is nonzero."""
        return tuple(any(any(row) for row in m) for m in self.block_coords(x))


@dataclass(frozen=True)
class QuotientMap:
    """Projection ``A -> A/I`` on the coordinate complement of ``I``."""

    source: Algebra
    ideal: Subspace
    target: Algebra
    keep: tuple  # source coordinates that index the target basis

    @classmethod
    def build(cls, A: Algebra, I: Subspace) -> "QuotientMap":
        piv = set(I.pivots)
        keep = tuple(i for i in range(A.dim) if i not in piv)
        m = len(keep)
        table = {}
        tmp = cls(A, I, None, keep)  # type: ignore[arg-type]  # projection only needs I and keep
        for a, i in enumerate(keep):
            for b, j in enumerate(keep):
                terms = A.product_terms(i, j)
                if not terms:
                    continue
                w = A.multiply(A.basis_vector(i), A.basis_vector(j))
                img = tmp.project(w)
                t = tuple((k, c) for k, c in enumerate(img) if c)
                if t:
                    table[(a, b)] = t
        labels = [A.labels[i] for i in keep]
        target = Algebra(A.field, m, table, labels, check=False)
        return cls(A, I, target, keep)

    def project(self, x) -> Element:
        I = self.ideal
        v = list(x)
        field = self.source.field
        for row, pc in zip(I.basis, I.pivots):
            c = v[pc]
            if c:
                v = list(field.sub(v, field.scale(c, row)))
        return tuple(v[i] for i in self.keep)

    def section(self, y) -> Element:
        v = [0] * self.source.dim
        for c, i in zip(y, self.keep):
            v[i] = c
        return tuple(v)

    def project_subspace(self, U: Subspace) -> Subspace:
        return canonicalize([self.project(u) for u in U.basis], self.source.field, len(self.keep))

    def preimage(self, V: Subspace) -> Subspace:
        return self.source.span([self.section(v) for v in V.basis] + list(self.ideal.basis))

    def transport_levi(self) -> LeviDecomposition:
        """Levi data of the target induced from the source's Levi data."""
        L = self.source.levi()
        blocks = []
        for b in L.blocks:
            if not any(self.project(b.units[0][0])):
                continue
            units = tuple(tuple(self.project(b.units[i][j]) for j in range(b.size)) for i in range(b.size))
            blocks.append(MatrixUnitSystem(b.size, units))
        rad = self.project_subspace(L.radical)
        return LeviDecomposition.build(self.source.field, len(self.keep), blocks, rad)


def direct_sum_table(algebras: Sequence[Algebra]):
    """Product table, labels and offsets of the direct sum."""
    table, labels, offsets, off = {}, [], [], 0
    for i, A in enumerate(algebras):
        offsets.append(off)
        for (a, b), terms in A._table.items():
            table[(a + off, b + off)] = tuple((k + off, c) for k, c in terms)
        labels += [f"{lab}" if len(algebras) == 1 else f"{lab}@{i}" for lab in A.labels]
        off += A.dim
    return table, labels, offsets
