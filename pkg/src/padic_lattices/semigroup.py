"""Relations in Q_p^n x Q_p^n and their action on lattices.

A relation's carrier is a lattice in dimension 2n: coordinates ``0..n-1``
are the source block, ``n..2n-1`` the target block.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .lattice import (
    Lattice,
    Vector,
    adapted_basis,
    complex_distance,
    direct_sum,
    equal,
    from_generators,
    lattice_sum,
    meet,
    project,
    transform,
)
from .linalg import RankError, RationalMatrix, determinant, inverse, kernel_sublattice, unimodular
from .padic import ContextMismatch, PadicContext, valuation


class Relation:
    __slots__ = ("ctx", "n", "carrier")

    def __init__(self, carrier: Lattice):
        if carrier.n % 2:
            raise ValueError("a relation carrier must have even dimension")
        self.ctx = carrier.ctx
        self.n = carrier.n // 2
        self.carrier = carrier

    @classmethod
    def from_generators(cls, ctx: PadicContext, n: int, gens: Sequence[Vector]) -> "Relation":
        return cls(from_generators(ctx, 2 * n, gens))

    @classmethod
    def box(cls, source: Lattice, target: Lattice) -> "Relation":
        """``source (+) target``."""
        if source.n != target.n:
            raise ContextMismatch("blocks must have the same dimension")
        return cls(direct_sum(source, target))

    @property
    def source_rows(self) -> range:
        return range(self.n)

    @property
    def target_rows(self) -> range:
        return range(self.n, 2 * self.n)

    def __eq__(self, other):
        if not isinstance(other, Relation):
            return NotImplemented
        return self.carrier == other.carrier

    def __hash__(self):
        return hash(("rel", self.carrier))

    def __matmul__(self, other: "Relation") -> "Relation":
        return compose(self, other)

    def __call__(self, R: Lattice) -> Lattice:
        return act(self, R)

    def __repr__(self):
        return f"Relation(n={self.n}, carrier={self.carrier!r})"


def _check(H: Relation, L) -> None:
    H.ctx.check(L.ctx)
    if H.n != L.n:
        raise ContextMismatch(f"dimension mismatch: {H.n} vs {L.n}")


# ---------------------------------------------------------------------------
# structural lattices

def dom(H: Relation) -> Lattice:
    return project(H.carrier, H.source_rows)


def im(H: Relation) -> Lattice:
    return project(H.carrier, H.target_rows)


def _block_selector(n: int, target: bool) -> RationalMatrix:
    off = n if target else 0
    return RationalMatrix([[int(j == i + off) for j in range(2 * n)] for i in range(n)])


def ker(H: Relation) -> Lattice:
    """``{v : (v, 0) in H}``."""
    K = kernel_sublattice(H.ctx, _block_selector(H.n, True), H.carrier.basis)
    return from_generators(H.ctx, H.n, [c[: H.n] for c in K.columns()])


def indef(H: Relation) -> Lattice:
    """``{w : (0, w) in H}``."""
    K = kernel_sublattice(H.ctx, _block_selector(H.n, False), H.carrier.basis)
    return from_generators(H.ctx, H.n, [c[H.n:] for c in K.columns()])


# ---------------------------------------------------------------------------
# action and composition

def act(H: Relation, R: Lattice) -> Lattice:
    """``{w : (v, w) in H for some v in R}``."""
    _check(H, R)
    M = meet(H.carrier, direct_sum(R, im(H)))
    return project(M, H.target_rows)


def compose(G: Relation, H: Relation) -> Relation:
    """``G . H``: apply H first, then G."""
    G.ctx.check(H.ctx)
    if G.n != H.n:
        raise ContextMismatch(f"dimension mismatch: {G.n} vs {H.n}")
    n = H.n
    # coordinates (v, w, y)
    first = direct_sum(H.carrier, im(G))
    second = direct_sum(dom(H), G.carrier)
    P = meet(first, second)
    return Relation(project(P, list(range(n)) + list(range(2 * n, 3 * n))))


def compose_via_kernel(G: Relation, H: Relation) -> Relation:
    """Same product as :func:`compose`, computed from a kernel in H x G."""
    G.ctx.check(H.ctx)
    n = H.n
    A = RationalMatrix.block_diag(H.carrier.basis, G.carrier.basis)
    # (v, w, w', y) with w == w'
    B = RationalMatrix([[int(j == n + i) - int(j == 2 * n + i) for j in range(4 * n)] for i in range(n)])
    K = kernel_sublattice(H.ctx, B, A)
    gens = [c[:n] + c[3 * n:] for c in K.columns()]
    return Relation(from_generators(H.ctx, 2 * n, gens))


# ---------------------------------------------------------------------------
# the structure map g_H

def _lift_domain(H: Relation, vectors) -> list[tuple[Fraction, ...]]:
    """For each v in dom(H), some w with (v, w) in H."""
    n = H.n
    # Canonicalize with the target block first: the last n columns then
    # project onto an upper-triangular basis of dom(H).
    swapped = [c[n:] + c[:n] for c in H.carrier.generators()]
    A = from_generators(H.ctx, 2 * n, swapped).basis
    src = RationalMatrix([A.entries[n + i][n:] for i in range(n)])
    tgt = RationalMatrix([A.entries[i][n:] for i in range(n)])
    src_inv = inverse(H.ctx, src)
    out = []
    for v in vectors:
        c = src_inv.apply(v)
        assert all(valuation(H.ctx, x) >= 0 for x in c if x), "vector is not in the domain"
        out.append(tgt.apply(c))
    return out


def structure_map(H: Relation) -> RationalMatrix:
    """An invertible g with ``(v, g v) in H`` for all v in dom(H).

    Such a g maps dom(H) onto im(H) and ker(H) onto indef(H), and induces the
    isomorphism ``dom/ker -> im/indef`` that H itself defines.
    """
    n = H.n
    D, K, I, N = dom(H), ker(H), im(H), indef(H)
    F = adapted_basis(D, K)
    E = adapted_basis(I, N)
    a = [-k for k in complex_distance(D, K)]
    b = [-k for k in complex_distance(I, N)]
    assert a == b, f"dom/ker and im/indef invariants differ: {a} vs {b}"
    W = RationalMatrix.from_columns(_lift_domain(H, F.columns()))
    C = inverse(H.ctx, E) @ W
    # rows with a_i == 0 may be changed freely (adding indef multiples)
    rows = [list(C.entries[i]) if a[i] > 0 else [int(j == i) for j in range(n)] for i in range(n)]
    C = RationalMatrix(rows)
    assert unimodular(H.ctx, C), "could not lift the quotient isomorphism"
    g = E @ C @ inverse(H.ctx, F)
    return g


def decomposition_identity(H: Relation, L: Lattice) -> bool:
    """Check ``H L == g_H (L & dom H) + indef H``."""
    _check(H, L)
    g = structure_map(H)
    rhs = lattice_sum(transform(g, meet(L, dom(H))), indef(H))
    return equal(act(H, L), rhs)


# ---------------------------------------------------------------------------
# graph approximation

def graph_approx(ctx: PadicContext, g: RationalMatrix, j: int) -> Relation:
    """``p**-j graph(g|O^n) + p**j O^{2n}``: for large j it acts like g."""
    n = g.rows
    if not g.is_square() or determinant(g) == 0:
        raise RankError("graph_approx needs an invertible matrix")
    scale = Fraction(ctx.p) ** (-j)
    gens = []
    for i in range(n):
        e = [int(k == i) for k in range(n)]
        gens.append([scale * x for x in e] + [scale * x for x in g.column(i)])
    for k in range(2 * n):
        gens.append([Fraction(ctx.p) ** j if t == k else 0 for t in range(2 * n)])
    return Relation.from_generators(ctx, n, gens)


def graph_threshold(ctx: PadicContext, g: RationalMatrix, window: int) -> int:
    """Every j above this value has ``act(graph_approx(g, j), R) == g R`` for R in the window."""
    gi = inverse(ctx, g)
    vals = [valuation(ctx, x) for M in (g, gi) for row in M.entries for x in row if x]
    return max(0, -min(vals)) + window
