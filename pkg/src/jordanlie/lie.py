"""The Lie algebra A^(-) and its derived series.

``A^(0) = A`` and ``A^(k) = [A^(k-1), A^(k-1)]``.  A :class:`LieView`
bundles one member ``L`` of the series with its nil-radical ``N = R ∩ L``
and the matching derived member ``Q`` of a Levi subalgebra.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra, QuotientMap
from .errors import PreconditionError, UndecidableError
from .scalars import Subspace, canonicalize, kernel, solve


def derived_member(A: Algebra, k: int) -> Subspace:
    if k < 0:
        raise ValueError("k must be non-negative")

    def compute():
        if k == 0:
            return A.full()
        prev = derived_member(A, k - 1)
        return A.bracket_span(prev, prev)

    return A._cached(("derived", k), compute)


def derived_series(A: Algebra) -> list:
    """``[A^(0), A^(1), ...]`` up to and including the first repeated member."""
    out = [derived_member(A, 0)]
    k = 0
    while True:
        k += 1
        nxt = derived_member(A, k)
        out.append(nxt)
        if nxt == out[-2]:
            return out


def derived_limit(A: Algebra) -> Subspace:
    """The stable member ``A^(inf)``."""
    return derived_series(A)[-1]


def derived_of(A: Algebra, U: Subspace, k: int) -> Subspace:
    """k-th derived member of the Lie subalgebra ``U``."""
    for _ in range(k):
        U = A.bracket_span(U, U)
    return U


@dataclass(frozen=True)
class LieView:
    parent: Algebra
    k: int
    L: Subspace
    N: Subspace
    Q: Subspace | None

    @classmethod
    def of(cls, A: Algebra, k: int = 1, with_levi: bool = True) -> "LieView":
        def compute():
            L = derived_member(A, k)
            N = L & A.radical()
            Q = derived_of(A, A.levi().semisimple_part(), k) if with_levi else None
            return cls(A, k, L, N, Q)

        return A._cached(("lieview", k, with_levi), compute)

    @property
    def algebra(self) -> Algebra:
        return self.parent


def nil_radical(view: LieView) -> Subspace:
    return view.N


def quasi_levi(view: LieView) -> tuple:
    """``(Q, N)`` with ``L = Q ⊕ N``; ``Q`` is the k-th derived member of the Levi subalgebra."""
    if view.k < 1:
        raise PreconditionError("the quasi Levi splitting is taken for k >= 1")
    Q = view.Q if view.Q is not None else LieView.of(view.parent, view.k).Q
    if (Q & view.N).dim or (Q + view.N) != view.L:
        raise PreconditionError("derived Levi part and nil-radical do not split L")
    return Q, view.N


def lie_center(A: Algebra, Q: Subspace) -> Subspace:
    """``{z in Q : [z, Q] = 0}``."""
    if not Q.dim:
        return Q
    rows = []
    for q in Q.basis:
        cols = [A.commutator(z, q) for z in Q.basis]
        rows.extend(list(r) for r in zip(*cols))
    K = kernel(rows, A.field, Q.dim).basis
    return A.span(A.field.combo(zip(c, Q.basis), A.dim) for c in K)


def killing_matrix(A: Algebra, Q: Subspace, Z: Subspace) -> list:
    """Gram matrix of the Killing form of ``Q/Z`` on a complement of ``Z`` in ``Q``."""
    ech = Z.echelon()
    comp = [q for q in Q.basis if ech.add(q)]
    basis = list(Z.basis) + comp
    M = [list(r) for r in zip(*basis)]
    nz = Z.dim

    def coords(v):
        sol = solve(M, v, A.field, len(basis))
        assert sol is not None
        return sol.particular[nz:]

    ads = []
    for x in comp:
        ads.append([coords(A.commutator(x, c)) for c in comp])  # ads[x][col] = column vector
    m = len(comp)
    G = []
    for a in range(m):
        row = []
        for b in range(m):
            # trace(ad_a ad_b) = sum_i sum_j ad_a[j][i] * ad_b[i][j] with ad[col][row]
            s = 0
            for i in range(m):
                for j in range(m):
                    s += ads[a][j][i] * ads[b][i][j]
            row.append(A.field(s))
        G.append(row)
    return G


def is_perfect(A: Algebra, Q: Subspace) -> bool:
    return A.bracket_span(Q, Q) == Q


def is_quasi_semisimple(A: Algebra, Q: Subspace) -> bool:
    """Whether ``Q`` is perfect with ``Q/Z(Q)`` semisimple.

    Over Q the Killing form of ``Q/Z(Q)`` decides; over F_p the answer is
    read off the Levi block data and anything else is undecidable here.
    """
    if not A.bracket_span(Q, Q) <= Q:
        raise PreconditionError("Q is not a Lie subalgebra")
    if not is_perfect(A, Q):
        return False
    if not A.field.p:
        Z = lie_center(A, Q)
        G = killing_matrix(A, Q, Z)
        if not G:
            return True
        rank = canonicalize(G, A.field, len(G)).dim
        return rank == len(G)
    blocks = A.levi()
    expected = A.zero_space()
    for r in range(len(blocks.blocks)):
        S_r = blocks.block_subspace(r)
        expected = expected + A.bracket_span(S_r, S_r)
    if Q == expected:
        return True
    raise UndecidableError("quasi semisimplicity in positive characteristic needs Q to come from Levi blocks")


def radical_quotient(A: Algebra) -> QuotientMap:
    return A._cached("radical_quotient", lambda: A.quotient(A.radical()))


def bar_image(A: Algebra, U: Subspace) -> Subspace:
    """Image of ``U`` in ``A/R``."""
    return radical_quotient(A).project_subspace(U)


def same_bar(A: Algebra, U: Subspace, V: Subspace) -> bool:
    R = A.radical()
    return (U + R) == (V + R)
