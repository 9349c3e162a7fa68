"""Matrix units for the semisimple quotient and their lift into the algebra.

Given raw structure constants, the semisimple quotient A/R is split into
simple blocks with central idempotents; each block is cut down to
primitive idempotents, matrix units are read off, and the whole system is
lifted back through the radical.  Anything that only makes sense over an
extension of the base field raises :class:`NotSplitError`.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import isqrt

import sympy

from .algebra import Algebra, LeviDecomposition, MatrixUnitSystem
from .errors import JordanLieError, NotSplitError, PreconditionError
from .scalars import Echelon, FieldSpec, solve

_T = sympy.Symbol("t")
SEARCH_LIMIT = 400


# polynomials in one element

def minimal_polynomial(B: Algebra, x, g) -> list:
    """Monic minimal polynomial (low to high coefficients) of ``x`` in the corner with unit ``g``."""
    field = B.field
    powers = [tuple(g)]
    ech = Echelon(field, B.dim, powers)
    cur = tuple(x)
    while True:
        if ech.contains(cur):
            M = [list(r) for r in zip(*powers)]
            sol = solve(M, cur, field, len(powers))
            assert sol is not None
            return [field.neg((a,))[0] for a in sol.particular] + [1]
        ech.add(cur)
        powers.append(cur)
        cur = B.multiply(cur, x)


def _to_sympy(coeffs, field: FieldSpec) -> sympy.Poly:
    hi = list(reversed(coeffs))
    if field.p:
        return sympy.Poly([int(c) for c in hi], _T, modulus=field.p)
    return sympy.Poly([sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in hi], _T, domain="QQ")


def _from_sympy(poly: sympy.Poly, field: FieldSpec) -> list:
    out = []
    for c in reversed(poly.all_coeffs()):
        if field.p:
            out.append(int(c) % field.p)
        else:
            r = sympy.Rational(c)
            out.append(field(Fraction(int(r.p), int(r.q))))
    return out


def evaluate(B: Algebra, coeffs, x, g):
    """``sum c_i x^i`` with ``x^0`` read as the corner unit ``g``."""
    field = B.field
    out = B.zero()
    for c in reversed(coeffs):
        out = B.multiply(out, x)
        if c:
            out = field.add(out, field.scale(field(c), g))
    return out


def analyse(B: Algebra, x, g):
    """Classify ``x`` in the corner ``gBg`` by its minimal polynomial.

    Returns ``("idempotents", [e_1, ..., e_r])`` when the minimal polynomial
    has coprime factors, ``("nilpotent", y)`` for a repeated factor,
    ``("irreducible", degree)`` or ``("scalar", None)``.
    """
    field = B.field
    mp = _to_sympy(minimal_polynomial(B, x, g), field)
    _, factors = mp.factor_list()
    if len(factors) >= 2:
        idems = []
        for f, m in factors:
            P = f ** m
            Q = mp.quo(P)
            u, _, h = Q.gcdex(P)
            eps = (u * Q).rem(mp).quo_ground(h.LC())
            idems.append(evaluate(B, _from_sympy(eps, field), x, g))
        return "idempotents", idems
    f, m = factors[0]
    if m >= 2:
        y = evaluate(B, _from_sympy(f ** (m - 1), field), x, g)
        return "nilpotent", y
    if f.degree() > 1:
        return "irreducible", f.degree()
    return "scalar", None


# semisimple quotient

def unit_of(B: Algebra):
    """Two-sided identity of ``B`` (None if there is none)."""
    n = B.dim
    basis = B.basis()
    rows, rhs = [], []
    for i, b in enumerate(basis):
        left = [B.multiply(basis[k], b) for k in range(n)]
        right = [B.multiply(b, basis[k]) for k in range(n)]
        for l in range(n):
            rows.append([left[k][l] for k in range(n)])
            rhs.append(b[l])
            rows.append([right[k][l] for k in range(n)])
            rhs.append(b[l])
    sol = solve(rows, rhs, B.field, n)
    return None if sol is None else sol.particular


def central_idempotents(B: Algebra, one) -> list:
    """Primitive central idempotents of the semisimple algebra ``B``."""
    Z = B.center()
    out, stack = [], [one]
    while stack:
        g = stack.pop()
        for z in Z.basis:
            kind, data = analyse(B, B.multiply(g, z), g)
            if kind == "irreducible":
                raise NotSplitError("the centre of a simple component is a proper field extension")
            if kind == "nilpotent":
                raise JordanLieError("nonzero nilpotent central element in a semisimple quotient")
            if kind == "idempotents":
                stack.extend(data)
                break
        else:
            out.append(g)
    return out


def _candidates(B: Algebra, h, corner_basis, rng: random.Random):
    basis = B.basis()
    seen = 0
    for b in basis:
        yield B.mul(h, b, h)
    n = len(basis)
    for i in range(n):
        for j in range(i + 1, n):
            yield B.mul(h, B.add(basis[i], basis[j]), h)
            yield B.mul(h, B.sub(basis[i], basis[j]), h)
    for i in range(n):
        for j in range(n):
            yield B.mul(h, basis[i], basis[j], h)
    while seen < SEARCH_LIMIT:
        seen += 1
        yield B.field.combo(((rng.randint(-2, 2), c) for c in corner_basis), B.dim)


def _left_ideal_idempotent(B: Algebra, y, corner_basis):
    """An idempotent generating the left ideal of the corner spanned by ``c y``."""
    ech = Echelon(B.field, B.dim)
    for c in corner_basis:
        ech.add(B.multiply(c, y))
    I = ech.basis()
    rows, rhs = [], []
    k = len(I)
    prods = [[B.multiply(I[j], I[a]) for a in range(k)] for j in range(k)]
    for j in range(k):
        for l in range(B.dim):
            rows.append([prods[j][a][l] for a in range(k)])
            rhs.append(I[j][l])
    sol = solve(rows, rhs, B.field, k)
    if sol is None:
        raise JordanLieError("left ideal of a semisimple corner has no idempotent generator")
    return B.field.combo(zip(sol.particular, I), B.dim)


def split_corner(B: Algebra, h, rng: random.Random):
    """Write ``h`` as a sum of two nonzero orthogonal idempotents."""
    corner = B.span(B.mul(h, b, h) for b in B.basis())
    tried = 0
    for x in _candidates(B, h, corner.basis, rng):
        tried += 1
        if not any(x):
            continue
        kind, data = analyse(B, x, h)
        if kind == "idempotents":
            e = data[0]
        elif kind == "nilpotent":
            e = _left_ideal_idempotent(B, data, corner.basis)
        else:
            continue
        rest = B.sub(h, e)
        if any(e) and any(rest) and B.is_idempotent(e):
            return e, rest
    raise NotSplitError(f"no zero divisor found in a corner of dimension {corner.dim} after {tried} tries")


def primitive_idempotents(B: Algebra, c, rng: random.Random) -> list:
    out, stack = [], [c]
    while stack:
        h = stack.pop()
        corner = B.span(B.mul(h, b, h) for b in B.basis())
        if corner.dim == 1:
            out.append(h)
            continue
        stack.extend(split_corner(B, h, rng))
    return out


def _scalar_multiple(u, v, field: FieldSpec):
    """``lam`` with ``u = lam * v``."""
    i = next(k for k, a in enumerate(v) if a)
    return field.div(u[i], v[i])


def block_matrix_units(B: Algebra, idems: list) -> list:
    n = len(idems)
    field = B.field
    e1 = idems[0]
    row = [e1]
    col = [e1]
    for j in range(1, n):
        ej = idems[j]
        s = B.span(B.mul(e1, b, ej) for b in B.basis())
        t = B.span(B.mul(ej, b, e1) for b in B.basis())
        if s.dim != 1 or t.dim != 1:
            raise NotSplitError("off-diagonal corner is not one-dimensional")
        e1j, ej1 = s.basis[0], t.basis[0]
        lam = _scalar_multiple(B.multiply(e1j, ej1), e1, field)
        row.append(e1j)
        col.append(field.scale(field.inv(lam), ej1))
    return [[B.multiply(col[i], row[j]) for j in range(n)] for i in range(n)]


def split_semisimple(B: Algebra, seed: int = 12345) -> list:
    """Matrix-unit arrays for every simple component of the semisimple algebra ``B``."""
    if B.dim == 0:
        return []
    one = unit_of(B)
    if one is None:
        raise JordanLieError("semisimple quotient has no identity")
    rng = random.Random(seed)
    blocks = []
    for c in central_idempotents(B, one):
        d = B.span(B.multiply(c, b) for b in B.basis()).dim
        n = isqrt(d)
        if n * n != d:
            raise NotSplitError(f"simple component of dimension {d} is not a full matrix algebra")
        idems = primitive_idempotents(B, c, rng)
        if len(idems) != n:
            raise NotSplitError("simple component is a matrix algebra over a division algebra")
        blocks.append(block_matrix_units(B, idems))
    blocks.sort(key=lambda u: (-len(u), tuple(u[0][0])))
    return blocks


# lifting

def lift_idempotent_iter(A: Algebra, x, max_steps: int | None = None):
    """Iterate ``e <- 3e^2 - 2e^3`` until ``e`` is idempotent."""
    e = tuple(x)
    steps = max_steps if max_steps is not None else A.dim + 2
    field = A.field
    for _ in range(steps):
        e2 = A.multiply(e, e)
        if e2 == e:
            return e
        e3 = A.multiply(e2, e)
        e = field.sub(field.scale(3, e2), field.scale(2, e3))
    if A.multiply(e, e) == e:
        return e
    raise JordanLieError("idempotent iteration did not converge")


def corner_inverse(A: Algebra, e, x):
    """Inverse of ``x = e + r`` inside ``eAe`` for nilpotent ``r``."""
    field = A.field
    r = field.sub(x, e)
    out, term = tuple(e), tuple(e)
    for _ in range(A.dim + 1):
        term = field.neg(A.multiply(term, r))
        if not any(term):
            return out
        out = field.add(out, term)
    raise JordanLieError("corner element is not unipotent")


def lift_units(A: Algebra, section, bar_blocks: list) -> list:
    field = A.field
    E = A.zero()
    diag = []
    for blk in bar_blocks:
        row = []
        for i in range(len(blk)):
            x = section(blk[i][i])
            y = field.add(field.sub(field.sub(x, A.multiply(E, x)), A.multiply(x, E)), A.mul(E, x, E))
            e = lift_idempotent_iter(A, y)
            row.append(e)
            E = field.add(E, e)
        diag.append(row)
    out = []
    for blk, d in zip(bar_blocks, diag):
        n = len(blk)
        e11 = d[0]
        first_row, first_col = [e11], [e11]
        for j in range(1, n):
            e1j = A.mul(e11, section(blk[0][j]), d[j])
            ej1 = A.mul(d[j], section(blk[j][0]), e11)
            inv = corner_inverse(A, e11, A.multiply(e1j, ej1))
            first_row.append(e1j)
            first_col.append(A.multiply(ej1, inv))
        units = tuple(tuple(A.multiply(first_col[i], first_row[j]) for j in range(n)) for i in range(n))
        out.append(MatrixUnitSystem(n, units))
    return out


def verify_units(A: Algebra, blocks) -> None:
    zero = A.zero()
    for r, b in enumerate(blocks):
        for s, c in enumerate(blocks):
            for i in range(b.size):
                for j in range(b.size):
                    for k in range(c.size):
                        for l in range(c.size):
                            p = A.multiply(b.units[i][j], c.units[k][l])
                            want = b.units[i][l] if (r == s and j == k) else zero
                            if p != want:
                                raise JordanLieError(f"matrix unit relation fails in blocks {r},{s}")


def levi_decomposition(A: Algebra, hint=None) -> LeviDecomposition:
    field = A.field
    R = A.radical()
    if hint is not None:
        blocks = [
            MatrixUnitSystem(len(u), tuple(tuple(field.vec(x) for x in row) for row in u)) for u in hint
        ]
        try:
            verify_units(A, blocks)
        except JordanLieError as exc:
            raise PreconditionError(f"stored Levi data is invalid: {exc}") from None
    elif R.dim == A.dim:
        blocks = []
    else:
        Q = A.quotient(R)
        bar_blocks = split_semisimple(Q.target)
        blocks = lift_units(A, Q.section, bar_blocks)
    verify_units(A, blocks)
    try:
        return LeviDecomposition.build(field, A.dim, blocks, R)
    except ZeroDivisionError as exc:
        raise JordanLieError("matrix units and radical are not complementary") from exc
