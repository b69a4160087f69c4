"""Exact matrix algebra over the valuation ring O_p.

Public functions take and return :class:`RationalMatrix`. The lattice code
calls the integer kernels (``hnf_int``, ``tri_adjugate``, ``snf_exponents_int``)
directly: a rational matrix whose columns have been cleared of non-p
denominators (multiplying a column by a unit does not change its O_p-span) is
stored as integers together with a power-of-p scale.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .padic import PadicContext, ScalarLike, as_scalar, split_int, valuation, vp_int


class RankError(ValueError):
    """A matrix was rank deficient where full rank is required."""


class RationalMatrix:
    """Immutable dense matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, entries: Iterable[Iterable[ScalarLike]], cols: Optional[int] = None):
        rows = tuple(tuple(as_scalar(x) for x in row) for row in entries)
        if cols is None:
            if not rows:
                raise ValueError("cannot infer the column count of an empty matrix")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        self.rows = len(rows)
        self.cols = cols
        self.entries = rows
        self._hash = None

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[ScalarLike]], rows: Optional[int] = None) -> "RationalMatrix":
        if not columns:
            if rows is None:
                raise ValueError("need a row count for a matrix with no columns")
            return cls([[] for _ in range(rows)], cols=0)
        return cls(zip(*columns), cols=len(columns))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, values: Sequence[ScalarLike]) -> "RationalMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix.from_columns(self.entries, rows=self.cols)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        oc = other.columns()
        return RationalMatrix(
            [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in oc] for row in self.entries],
            cols=other.cols,
        )

    def apply(self, v: Sequence[ScalarLike]) -> tuple[Fraction, ...]:
        v = [as_scalar(x) for x in v]
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self.entries)

    def scale(self, c: ScalarLike) -> "RationalMatrix":
        c = as_scalar(c)
        return RationalMatrix([[c * x for x in row] for row in self.entries], cols=self.cols)

    def select_rows(self, idx: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix([self.entries[i] for i in idx], cols=self.cols)

    def select_columns(self, idx: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix([[row[j] for j in idx] for row in self.entries], cols=len(idx))

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return RationalMatrix([a + b for a, b in zip(self.entries, other.entries)], cols=self.cols + other.cols)

    @staticmethod
    def block_diag(*blocks: "RationalMatrix") -> "RationalMatrix":
        total = sum(b.cols for b in blocks)
        out = []
        offset = 0
        for b in blocks:
            for row in b.entries:
                out.append([0] * offset + list(row) + [0] * (total - offset - b.cols))
            offset += b.cols
        return RationalMatrix(out, cols=total)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"RationalMatrix([{body}])"


# ---------------------------------------------------------------------------
# integer kernels

def _unit_content(c: Sequence[int], p: int) -> int:
    g = math.gcd(*c)
    if g <= 1:
        return 1
    while g % p == 0:
        g //= p
    return g


def integer_columns(p: int, columns: Iterable[Sequence[ScalarLike]]) -> tuple[list[list[int]], int]:
    """Clear denominators: returns integer columns ``C`` and scale ``s``.

    The O_p-span of ``C / p**s`` equals the span of the input columns.
    """
    cleared = []
    s = 0
    for col in columns:
        col = [as_scalar(x) for x in col]
        unit = 1
        for x in col:
            if x.denominator != 1:
                _, u = split_int(x.denominator, p)
                unit = unit * u // math.gcd(unit, u)
        col = [x * unit for x in col]
        for x in col:
            if x.denominator != 1:
                s = max(s, vp_int(x.denominator, p))
        cleared.append(col)
    ps = p**s
    return [[int(x * ps) for x in col] for col in cleared], s


def hnf_int(p: int, cols: Sequence[Sequence[int]], r: int, floor: Optional[int] = None):
    """Canonical upper-triangular column form of an integer generating set.

    Returns ``(H, d)``: ``H`` a list of ``r`` integer columns, column ``j``
    supported on rows ``<= j`` with ``H[j][j] == p**d[j]`` and
    ``0 <= H[j][k] < p**d[k]`` for ``k < j``.

    ``floor``, when given, promises ``p**floor * Z_p^r`` lies in the span; all
    arithmetic is then done modulo ``p**floor``.
    """
    if floor is not None:
        floor = max(floor, 0)
        mod = p**floor
        rem = [[x % mod for x in c] for c in cols]
        rem = [c for c in rem if any(c)]
    else:
        mod = None
        rem = [list(c) for c in cols if any(c)]

    piv: list = [None] * r
    d = [0] * r
    for i in range(r - 1, -1, -1):
        best = -1
        bv = None
        for idx, c in enumerate(rem):
            x = c[i]
            if x:
                v = vp_int(x, p)
                if bv is None or v < bv:
                    best, bv = idx, v
                    if v == 0:
                        break
        if bv is None:
            if mod is None:
                raise RankError("generators do not have full rank")
            col = [0] * r
            col[i] = mod
            piv[i] = col
            d[i] = floor
            continue
        P = rem.pop(best)
        pe = p**bv
        u = P[i] // pe
        new = []
        if mod is not None:
            uinv = pow(u, -1, mod)
            # the implicit column p**floor e_i, reduced against the pivot
            f = p ** (floor - bv) * uinv % mod
            c = [(-f * b) % mod for b in P]
            c[i] = 0
            if any(c):
                new.append(c)
        for c in rem:
            x = c[i]
            if not x:
                new.append(c)
                continue
            q = x // pe
            if mod is None:
                c = [u * a - q * b for a, b in zip(c, P)]
                g = _unit_content(c, p)
                if g != 1:
                    c = [a // g for a in c]
            else:
                f = q * uinv % mod
                c = [(a - f * b) % mod for a, b in zip(c, P)]
            if any(c):
                new.append(c)
        rem = new
        piv[i] = P
        d[i] = bv

    N = sum(d)
    if floor is not None:
        N = min(N, floor)
    if N == 0:
        return [[int(i == j) for i in range(r)] for j in range(r)], d
    M = p**N
    H: list[list[int]] = []
    for j in range(r):
        P = piv[j]
        pd = p ** d[j]
        t = pow(P[j] // pd, -1, M)
        col = [t * x % M for x in P[:j]] + [pd] + [0] * (r - j - 1)
        for k in range(j - 1, -1, -1):
            x = col[k]
            pk = p ** d[k]
            c = x // pk
            if c:
                Hk = H[k]
                for l in range(k):
                    col[l] = (col[l] - c * Hk[l]) % M
                col[k] = x - c * pk
        H.append(col)
    return H, d


def normalize_scale(p: int, H: list[list[int]], d: list[int], s: int):
    """Lower ``s`` while every entry of ``H`` is divisible by ``p``."""
    while s > 0 and all(x % p == 0 for col in H for x in col):
        H = [[x // p for x in col] for col in H]
        d = [e - 1 for e in d]
        s -= 1
    return H, d, s


def tri_adjugate(p: int, H: Sequence[Sequence[int]], d: Sequence[int]) -> list[list[int]]:
    """Columns of ``Y`` with ``H @ Y == p**sum(d) * I`` for canonical ``H``."""
    r = len(H)
    D = sum(d)
    Y = []
    for j in range(r):
        y = [0] * r
        y[j] = p ** (D - d[j])
        for i in range(j - 1, -1, -1):
            acc = 0
            for k in range(i + 1, j + 1):
                if y[k]:
                    acc += H[k][i] * y[k]
            q, rem = divmod(-acc, p ** d[i])
            assert rem == 0
            y[i] = q
        Y.append(y)
    return Y


def snf_exponents_int(p: int, rows: Sequence[Sequence[int]], K: int) -> list[int]:
    """Elementary-divisor exponents of a square integer matrix, computed mod ``p**K``.

    ``K`` must exceed the valuation of the determinant.
    """
    M = p**K
    A = [[x % M for x in row] for row in rows]
    n = len(A)
    exps = []
    for t in range(n):
        bi = bj = -1
        bv = None
        for j in range(t, n):
            for i in range(t, n):
                x = A[i][j]
                if x:
                    v = vp_int(x, p)
                    if bv is None or v < bv:
                        bi, bj, bv = i, j, v
            if bv == 0:
                break
        if bv is None:
            raise RankError("matrix is singular")
        A[t], A[bi] = A[bi], A[t]
        if bj != t:
            for row in A:
                row[t], row[bj] = row[bj], row[t]
        pe = p**bv
        uinv = pow(A[t][t] // pe, -1, M)
        rt = A[t]
        for i in range(t + 1, n):
            x = A[i][t]
            if x:
                f = (x // pe) * uinv % M
                ri = A[i]
                for j in range(t, n):
                    ri[j] = (ri[j] - f * rt[j]) % M
        exps.append(bv)
    return sorted(exps)


# ---------------------------------------------------------------------------
# public operations

def _check_full_row_rank_shape(M: RationalMatrix):
    if M.rows == 0 or M.rows > M.cols:
        raise RankError(f"need rows <= cols for a full row rank matrix, got {M.shape}")


def hnf_canonical(ctx: PadicContext, M: RationalMatrix) -> RationalMatrix:
    """Unique upper-triangular basis of the column module of ``M``.

    Diagonal entries are powers of p; each entry above the diagonal in row i is
    the canonical representative modulo the row's diagonal entry.
    """
    _check_full_row_rank_shape(M)
    p = ctx.p
    cols, s = integer_columns(p, M.columns())
    H, d = hnf_int(p, cols, M.rows)
    H, d, s = normalize_scale(p, H, d, s)
    ps = p**s
    return RationalMatrix.from_columns([[Fraction(x, ps) for x in col] for col in H])


def snf_exponents(ctx: PadicContext, M: RationalMatrix) -> list[int]:
    """Ascending exponents e with M = U diag(p**e) V, U and V in GL_n(O_p)."""
    if not M.is_square():
        raise RankError(f"snf_exponents needs a square matrix, got {M.shape}")
    p = ctx.p
    # rows are scaled by units and the whole matrix by p**s
    rows, s = integer_columns(p, M.entries)
    K = _det_valuation(ctx, M) + s * M.rows
    return [e - s for e in snf_exponents_int(p, rows, K + 1)]


def _det_valuation(ctx: PadicContext, M: RationalMatrix) -> int:
    det = determinant(M)
    if det == 0:
        raise RankError("matrix is singular")
    return valuation(ctx, det)


def determinant(M: RationalMatrix) -> Fraction:
    if not M.is_square():
        raise ValueError("determinant of a non-square matrix")
    A = [list(r) for r in M.entries]
    n = M.rows
    det = Fraction(1)
    for t in range(n):
        piv = next((i for i in range(t, n) if A[i][t] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != t:
            A[t], A[piv] = A[piv], A[t]
            det = -det
        a = A[t][t]
        det *= a
        for i in range(t + 1, n):
            f = A[i][t] / a
            if f:
                A[i] = [x - f * y for x, y in zip(A[i], A[t])]
    return det


def inverse(ctx: Optional[PadicContext], M: RationalMatrix) -> RationalMatrix:
    """Exact inverse by Gauss-Jordan elimination."""
    if not M.is_square():
        raise RankError("only square matrices are invertible")
    n = M.rows
    A = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M.entries)]
    for t in range(n):
        piv = next((i for i in range(t, n) if A[i][t] != 0), None)
        if piv is None:
            raise RankError("matrix is singular")
        A[t], A[piv] = A[piv], A[t]
        a = A[t][t]
        A[t] = [x / a for x in A[t]]
        for i in range(n):
            if i != t and A[i][t] != 0:
                f = A[i][t]
                A[i] = [x - f * y for x, y in zip(A[i], A[t])]
    return RationalMatrix([row[n:] for row in A], cols=n)


def smith_transforms(ctx: PadicContext, M: RationalMatrix):
    """Smith form with transforms for a matrix of full column rank.

    Returns ``(P, Pinv, Q, Qinv, e)`` with ``P @ M @ Q`` equal to
    ``diag(p**e)`` stacked over zero rows. P and Q are invertible over O_p;
    ``e`` comes out in pivot order (ascending, since each pivot has globally
    minimal valuation).
    """
    p = ctx.p
    m, k = M.shape
    if k > m:
        raise RankError("smith_transforms needs full column rank")
    A = [list(r) for r in M.entries]
    one, zero = Fraction(1), Fraction(0)
    P = [[one if i == j else zero for j in range(m)] for i in range(m)]
    Pinv = [row[:] for row in P]
    Q = [[one if i == j else zero for j in range(k)] for i in range(k)]
    Qinv = [row[:] for row in Q]
    exps = []
    for t in range(k):
        bi = bj = -1
        bv = None
        for j in range(t, k):
            for i in range(t, m):
                x = A[i][j]
                if x:
                    v = valuation(ctx, x)
                    if bv is None or v < bv:
                        bi, bj, bv = i, j, v
        if bv is None:
            raise RankError("matrix does not have full column rank")
        if bi != t:
            A[t], A[bi] = A[bi], A[t]
            P[t], P[bi] = P[bi], P[t]
            for row in Pinv:
                row[t], row[bi] = row[bi], row[t]
        if bj != t:
            for row in A:
                row[t], row[bj] = row[bj], row[t]
            for row in Q:
                row[t], row[bj] = row[bj], row[t]
            Qinv[t], Qinv[bj] = Qinv[bj], Qinv[t]
        pe = Fraction(p) ** bv
        u = A[t][t] / pe
        A[t] = [x / u for x in A[t]]
        P[t] = [x / u for x in P[t]]
        for row in Pinv:
            row[t] *= u
        for i in range(t + 1, m):
            x = A[i][t]
            if x:
                c = x / pe
                A[i] = [a - c * b for a, b in zip(A[i], A[t])]
                P[i] = [a - c * b for a, b in zip(P[i], P[t])]
                for row in Pinv:
                    row[t] += c * row[i]
        for j in range(t + 1, k):
            x = A[t][j]
            if x:
                c = x / pe
                A[t][j] = zero
                for row in Q:
                    row[j] -= c * row[t]
                Qinv[t] = [a + c * b for a, b in zip(Qinv[t], Qinv[j])]
        exps.append(bv)
    return (
        RationalMatrix(P, cols=m),
        RationalMatrix(Pinv, cols=m),
        RationalMatrix(Q, cols=k),
        RationalMatrix(Qinv, cols=k),
        exps,
    )


def smith_form(ctx: PadicContext, M: RationalMatrix):
    """``(U, e, V)`` with ``M == U @ diag(p**e) @ V``, U, V in GL_n(O_p), e ascending."""
    if not M.is_square():
        raise RankError(f"smith_form needs a square matrix, got {M.shape}")
    P, Pinv, Q, Qinv, exps = smith_transforms(ctx, M)
    order = sorted(range(len(exps)), key=lambda i: (exps[i], i))
    U = Pinv.select_columns(order)
    V = Qinv.select_rows(order)
    return U, [exps[i] for i in order], V


def kernel_sublattice(ctx: PadicContext, B: RationalMatrix, A: RationalMatrix) -> RationalMatrix:
    """Generators of ``{x in A O^m : B x = 0}`` as an m x s matrix.

    ``B @ A`` is column-reduced by O_p-invertible operations; the columns that
    become zero, pulled back through the transform, span the kernel.
    """
    if not A.is_square():
        raise RankError("A must be square")
    if B.cols != A.rows:
        raise ValueError(f"shape mismatch {B.shape} vs {A.shape}")
    m = A.rows
    C = [list(col) for col in (B @ A).columns()]
    U = [list(col) for col in RationalMatrix.identity(m).columns()]
    remaining = list(range(m))
    for i in range(B.rows):
        best = None
        bv = None
        for j in remaining:
            x = C[j][i]
            if x:
                v = valuation(ctx, x)
                if bv is None or v < bv:
                    best, bv = j, v
        if best is None:
            continue
        remaining.remove(best)
        piv = C[best][i]
        for j in remaining:
            x = C[j][i]
            if x:
                c = x / piv
                C[j] = [a - c * b for a, b in zip(C[j], C[best])]
                U[j] = [a - c * b for a, b in zip(U[j], U[best])]
    assert all(not any(C[j]) for j in remaining)
    kernel_cols = [A.apply(U[j]) for j in remaining]
    return RationalMatrix.from_columns(kernel_cols, rows=m)


def unimodular(ctx: PadicContext, M: RationalMatrix) -> bool:
    """True if M lies in GL_n(O_p)."""
    if not M.is_square():
        return False
    if any(valuation(ctx, x) < 0 for row in M.entries for x in row):
        return False
    det = determinant(M)
    return det != 0 and valuation(ctx, det) == 0
