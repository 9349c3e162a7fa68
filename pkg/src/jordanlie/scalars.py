"""Exact scalars over Q or F_p and canonical subspaces of F^n.

Rational scalars are stored as ``int`` whenever possible and as
``Fraction`` otherwise; prime-field scalars are ints in ``0..p-1``.
Row reduction over Q runs fraction-free on integer rows and only
normalises at the end, which keeps the hot loops on machine-size ints.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from sympy import isprime

from .errors import DimensionMismatch, UnsupportedCharacteristic

Vector = tuple


def _qnorm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


@dataclass(frozen=True)
class FieldSpec:
    """Q when ``p == 0``, otherwise the prime field F_p (p prime, p >= 5)."""

    p: int = 0

    def __post_init__(self):
        if self.p:
            if self.p < 0 or not isprime(self.p):
                raise UnsupportedCharacteristic(f"{self.p} is not prime")
            if self.p in (2, 3):
                raise UnsupportedCharacteristic("characteristic 2 and 3 are not supported")

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        text = text.strip()
        if text in ("Q", "QQ"):
            return cls(0)
        if text[:1] == "F" and text[1:].isdigit():
            return cls(int(text[1:]))
        raise ValueError(f"unknown field {text!r}")

    @property
    def kind(self) -> str:
        return "prime" if self.p else "rational"

    @property
    def characteristic(self) -> int:
        return self.p

    def __str__(self):
        return f"F{self.p}" if self.p else "Q"

    # scalars

    def __call__(self, x):
        if isinstance(x, str):
            x = Fraction(x)
        p = self.p
        if not p:
            if isinstance(x, Fraction):
                return _qnorm(x)
            return int(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        return _qnorm(Fraction(1) / x)

    def div(self, a, b):
        if self.p:
            return a * pow(b, -1, self.p) % self.p
        return _qnorm(Fraction(a) / b)

    def mul(self, a, b):
        return a * b % self.p if self.p else a * b

    def fmt(self, x) -> str:
        x = self(x)
        return str(x)

    # vectors

    def vec(self, coords: Iterable) -> Vector:
        return tuple(self(c) for c in coords)

    def zero(self, n: int) -> Vector:
        return (0,) * n

    def unit(self, n: int, i: int) -> Vector:
        v = [0] * n
        v[i] = 1
        return tuple(v)

    def add(self, u: Sequence, v: Sequence) -> Vector:
        if len(u) != len(v):
            raise DimensionMismatch(f"{len(u)} != {len(v)}")
        if self.p:
            p = self.p
            return tuple((a + b) % p for a, b in zip(u, v))
        return tuple(a + b for a, b in zip(u, v))

    def sub(self, u: Sequence, v: Sequence) -> Vector:
        if len(u) != len(v):
            raise DimensionMismatch(f"{len(u)} != {len(v)}")
        if self.p:
            p = self.p
            return tuple((a - b) % p for a, b in zip(u, v))
        return tuple(a - b for a, b in zip(u, v))

    def neg(self, u: Sequence) -> Vector:
        if self.p:
            return tuple(-a % self.p for a in u)
        return tuple(-a for a in u)

    def scale(self, c, u: Sequence) -> Vector:
        if self.p:
            p = self.p
            return tuple(c * a % p for a in u)
        return tuple(c * a for a in u)

    def combo(self, terms: Iterable[tuple], n: int) -> Vector:
        """Sum of ``c * v`` over ``(c, v)`` pairs, all of length ``n``."""
        out = [0] * n
        for c, v in terms:
            if not c:
                continue
            if len(v) != n:
                raise DimensionMismatch(f"{len(v)} != {n}")
            for i, a in enumerate(v):
                if a:
                    out[i] += c * a
        if self.p:
            p = self.p
            return tuple(a % p for a in out)
        return tuple(_qnorm(a) for a in out)

    def normalize(self, v: Sequence) -> Vector:
        if self.p:
            return tuple(a % self.p for a in v)
        return tuple(_qnorm(a) for a in v)

    def dot(self, u: Sequence, v: Sequence):
        s = sum(a * b for a, b in zip(u, v) if a and b)
        return s % self.p if self.p else _qnorm(s) if isinstance(s, Fraction) else s


QQ = FieldSpec(0)


def is_zero(v: Sequence) -> bool:
    return not any(v)


class Echelon:
    """Incrementally maintained reduced echelon form.

    Over Q rows are primitive integer vectors (pivot entry positive, not
    necessarily 1); over F_p rows have pivot 1. Rows are mutually reduced:
    each row vanishes at every other row's pivot column.
    """

    __slots__ = ("field", "n", "rows", "pivots")

    def __init__(self, field: FieldSpec, n: int, vectors: Iterable = ()):
        self.field = field
        self.n = n
        self.rows: list[list] = []
        self.pivots: list[int] = []
        for v in vectors:
            self.add(v)

    def copy(self) -> "Echelon":
        e = Echelon(self.field, self.n)
        e.rows = [list(r) for r in self.rows]
        e.pivots = list(self.pivots)
        return e

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _prep(self, v) -> list:
        if len(v) != self.n:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {self.n}")
        p = self.field.p
        if p:
            return [a % p for a in v]
        if all(type(a) is int for a in v):
            w = list(v)
        else:
            d = 1
            for a in v:
                if isinstance(a, Fraction):
                    d = lcm(d, a.denominator)
            w = [int(a * d) for a in v]
        g = gcd(*w) if w else 0
        if g > 1:
            w = [a // g for a in w]
        return w

    def _reduce(self, w: list) -> list:
        p = self.field.p
        if p:
            for r, pc in zip(self.rows, self.pivots):
                c = w[pc]
                if c:
                    w = [(x - c * y) % p for x, y in zip(w, r)]
            return w
        for r, pc in zip(self.rows, self.pivots):
            c = w[pc]
            if c:
                a = r[pc]
                g = gcd(a, c)
                a //= g
                c //= g
                w = [a * x - c * y for x, y in zip(w, r)]
                g = gcd(*w)
                if g > 1:
                    w = [x // g for x in w]
        return w

    def contains(self, v) -> bool:
        return not any(self._reduce(self._prep(v)))

    def add(self, v) -> bool:
        """Add ``v``; return True when it enlarged the span."""
        w = self._reduce(self._prep(v))
        lead = next((i for i, a in enumerate(w) if a), None)
        if lead is None:
            return False
        p = self.field.p
        if p:
            inv = pow(w[lead], -1, p)
            w = [x * inv % p for x in w]
            for k, r in enumerate(self.rows):
                c = r[lead]
                if c:
                    self.rows[k] = [(x - c * y) % p for x, y in zip(r, w)]
        else:
            if w[lead] < 0:
                w = [-x for x in w]
            a = w[lead]
            for k, r in enumerate(self.rows):
                c = r[lead]
                if c:
                    g = gcd(a, c)
                    r2 = [(a // g) * x - (c // g) * y for x, y in zip(r, w)]
                    g = gcd(*r2)
                    if r2[self.pivots[k]] < 0:
                        g = -g
                    if g not in (0, 1):
                        r2 = [x // g for x in r2]
                    self.rows[k] = r2
        self.rows.append(w)
        self.pivots.append(lead)
        return True

    def add_all(self, vectors: Iterable) -> "Echelon":
        for v in vectors:
            self.add(v)
        return self

    def basis(self) -> tuple:
        order = sorted(range(len(self.rows)), key=self.pivots.__getitem__)
        out = []
        for k in order:
            r, pc = self.rows[k], self.pivots[k]
            if self.field.p:
                out.append(tuple(r))
            else:
                a = r[pc]
                out.append(tuple(x // a if x % a == 0 else Fraction(x, a) for x in r))
        return tuple(out)

    def subspace(self) -> "Subspace":
        return Subspace(self.n, self.basis(), self.field)


@dataclass(frozen=True)
class Subspace:
    """A coordinate subspace held by its reduced row echelon basis.

    Two subspaces are equal exactly when their canonical bases agree.
    """

    ambient_dim: int
    basis: tuple
    field: FieldSpec = QQ
    _ech: list = dc_field(default_factory=list, compare=False, repr=False, hash=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple:
        return tuple(next(i for i, a in enumerate(b) if a) for b in self.basis)

    def echelon(self) -> Echelon:
        """A private copy of the echelon form, ready for extension."""
        if not self._ech:
            self._ech.append(Echelon(self.field, self.ambient_dim, self.basis))
        return self._ech[0].copy()

    def _echelon_ro(self) -> Echelon:
        if not self._ech:
            self._ech.append(Echelon(self.field, self.ambient_dim, self.basis))
        return self._ech[0]

    def __contains__(self, v) -> bool:
        return self._echelon_ro().contains(v)

    def contains(self, v) -> bool:
        return v in self

    def contains_all(self, vectors: Iterable) -> bool:
        ech = self._echelon_ro()
        return all(ech.contains(v) for v in vectors)

    def __le__(self, other: "Subspace") -> bool:
        _check_same(self, other)
        return other.contains_all(self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_combine(self, other, "sum")

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_combine(self, other, "intersect")

    def is_zero(self) -> bool:
        return not self.basis

    def coordinates(self, v) -> tuple:
        """Coefficients of ``v`` in the canonical basis (``v`` must lie in the span)."""
        if v not in self:
            raise ValueError("vector not in subspace")
        return tuple(v[pc] for pc in self.pivots)

    def combination(self, coeffs: Sequence) -> Vector:
        return self.field.combo(zip(coeffs, self.basis), self.ambient_dim)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, field={self.field})"


def _check_same(U: Subspace, V: Subspace):
    if U.ambient_dim != V.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {U.ambient_dim} and {V.ambient_dim}")


def canonicalize(vectors: Iterable, field: FieldSpec = QQ, ambient_dim: int | None = None) -> Subspace:
    vectors = [tuple(v) for v in vectors]
    if ambient_dim is None:
        if not vectors:
            raise DimensionMismatch("ambient dimension needed for an empty list")
        ambient_dim = len(vectors[0])
    for v in vectors:
        if len(v) != ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
    return Echelon(field, ambient_dim, vectors).subspace()


def span(vectors: Iterable, field: FieldSpec, n: int) -> Subspace:
    return canonicalize(vectors, field, n)


def zero_subspace(n: int, field: FieldSpec = QQ) -> Subspace:
    return Subspace(n, (), field)


def full_subspace(n: int, field: FieldSpec = QQ) -> Subspace:
    return Subspace(n, tuple(field.unit(n, i) for i in range(n)), field)


def subspace_combine(U: Subspace, V: Subspace, mode: str) -> Subspace:
    _check_same(U, V)
    if mode == "sum":
        ech = U.echelon() if U.dim >= V.dim else V.echelon()
        ech.add_all(V.basis if U.dim >= V.dim else U.basis)
        return ech.subspace()
    if mode == "intersect":
        if U.dim == 0 or V.dim == 0:
            return zero_subspace(U.ambient_dim, U.field)
        if U.dim == U.ambient_dim:
            return V
        if V.dim == V.ambient_dim:
            return U
        # Zassenhaus: rows (u|u) and (v|0); rows with vanishing left half span U ∩ V.
        n = U.ambient_dim
        z = (0,) * n
        ech = Echelon(U.field, 2 * n)
        for u in U.basis:
            ech.add(tuple(u) + tuple(u))
        for v in V.basis:
            ech.add(tuple(v) + z)
        inter = [r[n:] for r in ech.basis() if not any(r[:n])]
        return canonicalize(inter, U.field, n)
    raise ValueError(f"unknown mode {mode!r}")


def membership(U: Subspace, v) -> bool:
    if len(v) != U.ambient_dim:
        raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {U.ambient_dim}")
    return v in U


def rref(rows: Sequence[Sequence], field: FieldSpec, ncols: int | None = None) -> tuple[tuple, tuple]:
    """Reduced row echelon form (nonzero rows) and pivot columns of a matrix."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    ech = Echelon(field, ncols, rows)
    basis = ech.basis()
    return basis, tuple(next(i for i, a in enumerate(b) if a) for b in basis)


def kernel(M: Sequence[Sequence], field: FieldSpec, ncols: int | None = None) -> Subspace:
    """Right kernel {x : M x = 0} of a matrix given by rows."""
    if ncols is None:
        if not M:
            raise DimensionMismatch("column count needed for an empty matrix")
        ncols = len(M[0])
    R, pivots = rref(M, field, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    vecs = []
    neg = field.neg
    for fc in free:
        x = [0] * ncols
        x[fc] = 1
        for r, pc in zip(R, pivots):
            x[pc] = neg((r[fc],))[0]
        vecs.append(tuple(x))
    return canonicalize(vecs, field, ncols)


@dataclass(frozen=True)
class Solution:
    particular: Vector
    kernel: Subspace


def solve(M: Sequence[Sequence], b: Sequence, field: FieldSpec, ncols: int | None = None) -> Solution | None:
    """Solve ``M x = b``; None when the system is inconsistent.

    The particular solution sets every free variable to zero.
    """
    if len(M) != len(b):
        raise DimensionMismatch(f"{len(M)} equations but right-hand side of length {len(b)}")
    if ncols is None:
        if not M:
            raise DimensionMismatch("column count needed for an empty matrix")
        ncols = len(M[0])
    for row in M:
        if len(row) != ncols:
            raise DimensionMismatch("ragged matrix")
    aug = [tuple(row) + (bi,) for row, bi in zip(M, b)]
    R, pivots = rref(aug, field, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [0] * ncols
    for r, pc in zip(R, pivots):
        x[pc] = r[ncols]
    return Solution(field.normalize(x), kernel(M, field, ncols) if M else full_subspace(ncols, field))


def matmul(A: Sequence[Sequence], B: Sequence[Sequence], field: FieldSpec) -> list[list]:
    cols = list(zip(*B)) if B else []
    return [list(field.normalize([sum(a * b for a, b in zip(row, col)) for col in cols])) for row in A]


def matvec(A: Sequence[Sequence], v: Sequence, field: FieldSpec) -> Vector:
    return field.normalize([sum(a * b for a, b in zip(row, v)) for row in A])


def inverse(M: Sequence[Sequence], field: FieldSpec) -> list[list]:
    n = len(M)
    aug = [tuple(row) + field.unit(n, i) for i, row in enumerate(M)]
    R, pivots = rref(aug, field, 2 * n)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise ZeroDivisionError("singular matrix")
    return [list(r[n:]) for r in R[:n]]


def complement_basis(U: Subspace) -> tuple:
    """Coordinate vectors at the non-pivot columns: a canonical complement of U."""
    piv = set(U.pivots)
    return tuple(U.field.unit(U.ambient_dim, i) for i in range(U.ambient_dim) if i not in piv)
