"""Deterministic random lattices, relations and matrices.

Every trial gets its own ``random.Random`` seeded from
``sha256(f"{seed}:{index}")``, so a trial's instance depends only on the master
seed and its index. ``random.Random`` is a Mersenne Twister whose output for a
given integer seed is the same on every platform.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction

from .lattice import Lattice, Subspace, _rank
from .linalg import RationalMatrix
from .padic import PadicContext
from .semigroup import Relation


def trial_seed(seed: int, index: int) -> int:
    digest = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass(frozen=True)
class RandomSpec:
    seed: int
    p: int
    n: int
    bound: int = 3
    trials: int = 100

    @property
    def ctx(self) -> PadicContext:
        return PadicContext(self.p)

    def rng(self, index: int) -> random.Random:
        return random.Random(trial_seed(self.seed, index))


def _matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def random_unimodular(rng: random.Random, p: int, n: int, bound: int) -> list[list[int]]:
    """Integer matrix in GL_n(O_p): permutation * unit diagonal * upper * lower unitriangular."""
    top = p**bound
    perm = list(range(n))
    rng.shuffle(perm)
    units = []
    for _ in range(n):
        u = rng.randint(1, top)
        while u % p == 0:
            u = rng.randint(1, top)
        units.append(u)
    upper = [[1 if i == j else (rng.randrange(top) if j > i else 0) for j in range(n)] for i in range(n)]
    lower = [[1 if i == j else (rng.randrange(top) if j < i else 0) for j in range(n)] for i in range(n)]
    # rows of the permuted unit diagonal
    PD = [[units[i] if j == perm[i] else 0 for j in range(n)] for i in range(n)]
    return _matmul(_matmul(PD, upper), lower)


def _random_int_product(rng, p, n, bound):
    """Integer matrix Z and exponents with ``U1 diag(p**d) U2 == Z / p**s``."""
    d = [rng.randint(-bound, bound) for _ in range(n)]
    U1 = random_unimodular(rng, p, n, bound)
    U2 = random_unimodular(rng, p, n, bound)
    s = max(0, -min(d))
    D = [[p ** (d[i] + s) if i == j else 0 for j in range(n)] for i in range(n)]
    return _matmul(_matmul(U1, D), U2), d, s


def random_lattice(rng: random.Random, ctx: PadicContext, n: int, bound: int) -> Lattice:
    """``U1 diag(p**d) U2 O^n`` with ``d_i`` uniform in ``[-bound, bound]``.

    The result lies between ``p**bound O^n`` and ``p**-bound O^n``.
    """
    Z, d, s = _random_int_product(rng, ctx.p, n, bound)
    cols = [list(c) for c in zip(*Z)]
    return Lattice._from_int(ctx, n, cols, s, max(d) + s)


def random_relation(rng: random.Random, ctx: PadicContext, n: int, bound: int) -> Relation:
    return Relation(random_lattice(rng, ctx, 2 * n, bound))


def random_invertible(rng: random.Random, ctx: PadicContext, n: int, bound: int) -> RationalMatrix:
    """A random element of GL_n(Q_p) with entry valuations in ``[-bound, ...]``."""
    Z, _, s = _random_int_product(rng, ctx.p, n, bound)
    ps = ctx.p**s
    return RationalMatrix([[Fraction(x, ps) for x in row] for row in Z])


def random_vector(rng: random.Random, ctx: PadicContext, n: int, bound: int, nonzero: bool = True):
    p = ctx.p
    while True:
        v = [
            Fraction(rng.randint(-(p**bound), p**bound)) * Fraction(p) ** rng.randint(-bound, bound)
            for _ in range(n)
        ]
        if not nonzero or any(v):
            return v


def random_subspace(rng: random.Random, ctx: PadicContext, n: int, j: int, bound: int) -> Subspace:
    while True:
        cols = [random_vector(rng, ctx, n, bound, nonzero=False) for _ in range(j)]
        M = RationalMatrix.from_columns(cols)
        if _rank(M) == j:
            return Subspace(ctx, M)


def random_matrix(rng: random.Random, ctx: PadicContext, rows: int, cols: int, bound: int) -> RationalMatrix:
    """Random rational matrix of full row rank (entries ``m p**e``)."""
    while True:
        M = RationalMatrix.from_columns([random_vector(rng, ctx, rows, bound, nonzero=False) for _ in range(cols)])
        if _rank(M) == rows:
            return M
