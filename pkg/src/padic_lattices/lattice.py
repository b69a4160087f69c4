"""Lattices in Q_p^n: canonical bases, lattice algebra and the complex distance."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence, Union

from .linalg import (
    RankError,
    RationalMatrix,
    hnf_int,
    integer_columns,
    normalize_scale,
    smith_form,
    smith_transforms,
    snf_exponents_int,
    tri_adjugate,
)
from .padic import ContextMismatch, PadicContext, ScalarLike, as_scalar, valuation, vp_int

Vector = Sequence[ScalarLike]
NEG_INF = -math.inf


def _min_val(p: int, cols) -> int:
    return min(vp_int(x, p) for col in cols for x in col if x)


class Lattice:
    """A full-rank O_p-submodule of Q_p^n, stored by its canonical basis.

    Internally the basis is ``H / p**s`` with ``H`` an upper-triangular integer
    matrix (list of columns) whose diagonal is ``p**d[i]``. Two lattices are
    equal exactly when these representations coincide.
    """

    __slots__ = ("ctx", "n", "_H", "_d", "_s", "_adj", "_hash")

    def __init__(self, ctx: PadicContext, n: int, H, d, s: int):
        self.ctx = ctx
        self.n = n
        self._H = tuple(tuple(c) for c in H)
        self._d = tuple(d)
        self._s = s
        self._adj = None
        self._hash = None

    # -- construction -----------------------------------------------------

    @classmethod
    def _from_int(cls, ctx: PadicContext, n: int, cols, s: int, floor: Optional[int] = None) -> "Lattice":
        H, d = hnf_int(ctx.p, cols, n, floor)
        H, d, s = normalize_scale(ctx.p, H, d, s)
        return cls(ctx, n, H, d, s)

    @classmethod
    def standard(cls, ctx: PadicContext, n: int) -> "Lattice":
        """O_p^n."""
        return cls(ctx, n, [[int(i == j) for i in range(n)] for j in range(n)], [0] * n, 0)

    @classmethod
    def diagonal(cls, ctx: PadicContext, exponents: Sequence[int]) -> "Lattice":
        """The lattice spanned by ``p**a_i e_i``."""
        p = ctx.p
        return from_generators(
            ctx, len(exponents), [[Fraction(p) ** a if i == j else 0 for i in range(len(exponents))]
                                  for j, a in enumerate(exponents)]
        )

    # -- views ------------------------------------------------------------

    @property
    def basis(self) -> RationalMatrix:
        ps = self.ctx.p ** self._s
        return RationalMatrix.from_columns([[Fraction(x, ps) for x in col] for col in self._H])

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def diagonal_exponents(self) -> tuple[int, ...]:
        return tuple(e - self._s for e in self._d)

    def generators(self) -> list[tuple[Fraction, ...]]:
        return self.basis.columns()

    def _adjugate(self):
        if self._adj is None:
            self._adj = tri_adjugate(self.ctx.p, self._H, self._d)
        return self._adj

    def inverse_basis(self) -> RationalMatrix:
        """A_L^{-1} as a rational matrix."""
        p = self.ctx.p
        shift = Fraction(p) ** (self._s - sum(self._d))
        Y = self._adjugate()
        return RationalMatrix.from_columns([[x * shift for x in col] for col in Y])

    def bounds(self) -> tuple[int, int]:
        """``(lo, hi)`` with ``p**hi O^n  <=  L  <=  p**lo O^n``, both tight."""
        p = self.ctx.p
        lo = _min_val(p, self._H) - self._s
        hi = sum(self._d) - self._s - _min_val(p, self._adjugate())
        return lo, hi

    def coordinates(self, v: Vector) -> tuple[Fraction, ...]:
        """``A_L^{-1} v``."""
        v = [as_scalar(x) for x in v]
        if len(v) != self.n:
            raise ValueError(f"vector of length {len(v)} in dimension {self.n}")
        p = self.ctx.p
        shift = Fraction(p) ** (self._s - sum(self._d))
        Y = self._adjugate()
        return tuple(
            shift * sum((Y[k][i] * v[k] for k in range(i, self.n) if v[k]), Fraction(0))
            for i in range(self.n)
        )

    # -- dunder -----------------------------------------------------------

    def _key(self):
        return (self.ctx.p, self.n, self._s, self._H)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __contains__(self, v) -> bool:
        return member(self, v)

    def __add__(self, other: "Lattice") -> "Lattice":
        return lattice_sum(self, other)

    def __and__(self, other: "Lattice") -> "Lattice":
        return meet(self, other)

    def __le__(self, other: "Lattice") -> bool:
        return is_sublattice(self, other)

    def __repr__(self):
        cols = ", ".join("(" + ", ".join(str(x) for x in c) + ")" for c in self.generators())
        return f"Lattice(p={self.ctx.p}, n={self.n}, basis=[{cols}])"


class ComplexDistance(tuple):
    """Non-increasing integer vector ``k_1 >= ... >= k_n``."""

    def __new__(cls, ks):
        ks = tuple(int(k) for k in ks)
        if any(a < b for a, b in zip(ks, ks[1:])):
            raise ValueError(f"complex distance must be non-increasing: {ks}")
        return super().__new__(cls, ks)

    @property
    def ks(self) -> tuple[int, ...]:
        return tuple(self)

    def __repr__(self):
        return f"ComplexDistance({list(self)})"


class Subspace:
    """A j-dimensional subspace of Q_p^n given by a full-column-rank basis."""

    __slots__ = ("ctx", "n", "j", "basis")

    def __init__(self, ctx: PadicContext, basis: RationalMatrix):
        n, j = basis.shape
        if j == 0 or j > n:
            raise RankError(f"bad subspace basis shape {basis.shape}")
        if _rank(basis) != j:
            raise RankError("subspace basis is rank deficient")
        self.ctx = ctx
        self.n = n
        self.j = j
        self.basis = basis

    @classmethod
    def span(cls, ctx: PadicContext, vectors: Sequence[Vector]) -> "Subspace":
        return cls(ctx, RationalMatrix.from_columns(vectors))

    def __repr__(self):
        return f"Subspace(n={self.n}, j={self.j})"


def _rank(M: RationalMatrix) -> int:
    A = [list(r) for r in M.entries]
    rank = 0
    for c in range(M.cols):
        piv = next((i for i in range(rank, M.rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for i in range(rank + 1, M.rows):
            f = A[i][c] / A[rank][c]
            if f:
                A[i] = [x - f * y for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


def _check(L: Lattice, M: Lattice) -> None:
    L.ctx.check(M.ctx)
    if L.n != M.n:
        raise ContextMismatch(f"dimension mismatch: {L.n} vs {M.n}")


def _rescale(p: int, cols, s_from: int, s_to: int):
    if s_to == s_from:
        return [list(c) for c in cols]
    f = p ** (s_to - s_from)
    return [[x * f for x in c] for c in cols]


# ---------------------------------------------------------------------------
# construction and comparison

def from_generators(ctx: PadicContext, n: int, gens: Sequence[Vector]) -> Lattice:
    """The O_p-span of ``gens``; raises RankError unless they span Q_p^n."""
    gens = [list(g) for g in gens]
    if any(len(g) != n for g in gens):
        raise ValueError(f"every generator must have length {n}")
    if len(gens) < n:
        raise RankError(f"{len(gens)} generators cannot span dimension {n}")
    cols, s = integer_columns(ctx.p, gens)
    return Lattice._from_int(ctx, n, cols, s)


def from_basis(ctx: PadicContext, A: RationalMatrix) -> Lattice:
    if not A.is_square():
        raise RankError("a lattice basis must be square")
    return from_generators(ctx, A.rows, A.columns())


def equal(L: Lattice, M: Lattice) -> bool:
    _check(L, M)
    return L == M


def is_sublattice(L: Lattice, M: Lattice) -> bool:
    """``L <= M``."""
    _check(L, M)
    return all(member(M, c) for c in L.generators())


def transform(g: RationalMatrix, L: Lattice) -> Lattice:
    """``g . L`` for invertible ``g``."""
    if g.shape != (L.n, L.n):
        raise ValueError("matrix does not match the lattice dimension")
    return from_basis(L.ctx, g @ L.basis)


# ---------------------------------------------------------------------------
# norms

def norm(L: Lattice, v: Vector) -> Union[int, float]:
    """Exponent m with ``||v||_L = p**m``; ``-inf`` for the zero vector."""
    x = L.coordinates(v)
    vals = [valuation(L.ctx, c) for c in x if c]
    if not vals:
        return NEG_INF
    return -min(vals)


def member(L: Lattice, v: Vector) -> bool:
    return norm(L, v) <= 0


# ---------------------------------------------------------------------------
# lattice algebra

def lattice_sum(L: Lattice, M: Lattice) -> Lattice:
    """Smallest lattice containing both."""
    _check(L, M)
    p = L.ctx.p
    s = max(L._s, M._s)
    cols = _rescale(p, L._H, L._s, s) + _rescale(p, M._H, M._s, s)
    floor = min(L.bounds()[1], M.bounds()[1]) + s
    return Lattice._from_int(L.ctx, L.n, cols, s, floor)


def dual(L: Lattice) -> Lattice:
    """Functionals taking O_p values on L, under the coordinate pairing."""
    p = L.ctx.p
    Y = L._adjugate()
    D = sum(L._d)
    # (A^{-1})^T has columns = rows of A^{-1} = rows of Y * p**(s - D)
    rows = [[Y[k][i] for k in range(L.n)] for i in range(L.n)]
    scale = D - L._s
    if scale < 0:
        rows = [[x * p**-scale for x in r] for r in rows]
        scale = 0
    lo, _ = L.bounds()
    return Lattice._from_int(L.ctx, L.n, rows, scale, -lo + scale)


def meet(L: Lattice, M: Lattice) -> Lattice:
    """Largest lattice contained in both, via ``(L* + M*)*``."""
    _check(L, M)
    return dual(lattice_sum(dual(L), dual(M)))


def direct_sum(L: Lattice, M: Lattice) -> Lattice:
    """``L (+) M`` in dimension ``L.n + M.n``."""
    L.ctx.check(M.ctx)
    p = L.ctx.p
    s = max(L._s, M._s)
    a = _rescale(p, L._H, L._s, s)
    b = _rescale(p, M._H, M._s, s)
    cols = [c + [0] * M.n for c in a] + [[0] * L.n + c for c in b]
    d = [e + s - L._s for e in L._d] + [e + s - M._s for e in M._d]
    H, d, s = normalize_scale(p, cols, d, s)
    # block diagonal of two canonical bases is already canonical
    return Lattice(L.ctx, L.n + M.n, H, d, s)


def project(L: Lattice, rows: Sequence[int]) -> Lattice:
    """Image of L under the coordinate projection onto ``rows``."""
    cols = [[c[i] for i in rows] for c in L._H]
    floor = L.bounds()[1] + L._s
    return Lattice._from_int(L.ctx, len(rows), cols, L._s, floor)


# ---------------------------------------------------------------------------
# complex distance

def _transition_int(R: Lattice, S: Lattice):
    """Integer matrix Z and shift t with ``A_R^{-1} A_S = Z * p**t``."""
    Y = R._adjugate()
    H = S._H
    n = R.n
    Z = [[sum(Y[k][i] * H[j][k] for k in range(n)) for j in range(n)] for i in range(n)]
    return Z, R._s - sum(R._d) - S._s


def complex_distance(R: Lattice, S: Lattice) -> ComplexDistance:
    """``k_1 >= ... >= k_n`` with ``R = sum O f_j`` and ``S = sum p**-k_j O f_j``."""
    _check(R, S)
    Z, t = _transition_int(R, S)
    K = (R.n - 1) * sum(R._d) + sum(S._d) + 1
    exps = snf_exponents_int(R.ctx.p, Z, K)
    return ComplexDistance(-(e + t) for e in exps)


def adapted_basis(R: Lattice, S: Lattice) -> RationalMatrix:
    """Columns ``f_j`` realizing the complex distance of ``(R, S)``."""
    _check(R, S)
    X = R.inverse_basis() @ S.basis
    U, _, _ = smith_form(R.ctx, X)
    return R.basis @ U


def quotient_invariants(L: Lattice, M: Lattice) -> tuple[list[int], list[int]]:
    """Cyclic-factor exponents of ``M/(L & M)`` and of ``L/(L & M)``."""
    k = complex_distance(L, M)
    pos = [x for x in k if x > 0]
    neg = sorted((-x for x in k if x < 0), reverse=True)
    return pos, neg


# ---------------------------------------------------------------------------
# subspaces

def restrict_to_subspace(L: Lattice, W: Subspace) -> Lattice:
    """``{c : W c in L}`` in the coordinates of W's basis."""
    if W.n != L.n:
        raise ContextMismatch(f"subspace lives in dimension {W.n}, lattice in {L.n}")
    L.ctx.check(W.ctx)
    Y = L.inverse_basis() @ W.basis
    _, _, Q, _, exps = smith_transforms(L.ctx, Y)
    p = Fraction(L.ctx.p)
    cols = [[x * p ** (-e) for x in Q.column(i)] for i, e in enumerate(exps)]
    return from_generators(L.ctx, W.j, cols)


def minimax_value(R: Lattice, S: Lattice, W: Subspace) -> int:
    """Min over nonzero v in W of the exponent of ``||v||_R / ||v||_S``."""
    _check(R, S)
    return complex_distance(restrict_to_subspace(R, W), restrict_to_subspace(S, W))[-1]


def maximin_value(R: Lattice, S: Lattice, W: Subspace) -> int:
    """Max over nonzero v in W of the exponent of ``||v||_R / ||v||_S``."""
    _check(R, S)
    return complex_distance(restrict_to_subspace(R, W), restrict_to_subspace(S, W))[0]


def ratio_exponent(R: Lattice, S: Lattice, v: Vector) -> int:
    """Exponent of ``||v||_R / ||v||_S`` for nonzero v."""
    a, b = norm(R, v), norm(S, v)
    if a == NEG_INF:
        raise ValueError("ratio undefined for the zero vector")
    return a - b
