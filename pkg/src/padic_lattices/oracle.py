"""Brute-force ground truth on window-bounded lattices.

A lattice L with ``p**a O^n <= L <= p**-a O^n`` is recorded as the finite
subgroup ``p**a L / p**2a O^n`` of ``(Z/p**2a)^n``. Every operation here is
computed from explicit element sets; nothing from the matrix engine is used
except to read a lattice's generators when projecting it into the window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .lattice import Lattice, from_generators, member
from .padic import ContextMismatch, PadicContext, reduce_mod_power, valuation

MAX_GROUP = 10**6


class WindowError(ValueError):
    """A lattice is not bounded by the window, or the window is too large."""


@dataclass(frozen=True)
class Window:
    ctx: PadicContext
    a: int

    def __post_init__(self):
        if self.a < 0:
            raise WindowError("window size must be non-negative")

    @property
    def modulus(self) -> int:
        return self.ctx.p ** (2 * self.a)

    def group_size(self, dim: int) -> int:
        return self.modulus**dim

    def fits(self, dim: int) -> bool:
        return self.group_size(dim) <= MAX_GROUP


def _encode(X: np.ndarray, N: int) -> np.ndarray:
    weights = N ** np.arange(X.shape[1], dtype=np.int64)
    return (X.astype(np.int64) % N) @ weights


def _decode(codes: np.ndarray, N: int, dim: int) -> np.ndarray:
    out = np.empty((len(codes), dim), dtype=np.int64)
    c = np.asarray(codes, dtype=np.int64).copy()
    for i in range(dim):
        out[:, i] = c % N
        c //= N
    return out


def _add_cyclic(codes: np.ndarray, g: np.ndarray, N: int, dim: int) -> np.ndarray:
    """The subgroup ``codes + <g>`` (``codes`` must already be a subgroup)."""
    order = N // math.gcd(N, *(int(x) for x in g))
    X = _decode(codes, N, dim)
    mult = (np.arange(order, dtype=np.int64)[:, None] * g[None, :]) % N
    Y = (X[None, :, :] + mult[:, None, :]).reshape(-1, dim)
    return np.unique(_encode(Y, N))


def _close(codes: np.ndarray, extra: np.ndarray, N: int, dim: int) -> np.ndarray:
    """Subgroup generated by the subgroup ``codes`` and the element set ``extra``."""
    extra = np.setdiff1d(extra, codes, assume_unique=False)
    while len(extra):
        g = _decode(extra[:1], N, dim)[0]
        codes = _add_cyclic(codes, g, N, dim)
        extra = np.setdiff1d(extra, codes, assume_unique=True)
    return codes


class FiniteLattice:
    """A subgroup of ``(Z/p**2a)^dim``, stored as sorted element codes."""

    __slots__ = ("window", "dim", "codes")

    def __init__(self, window: Window, dim: int, codes: np.ndarray):
        if not window.fits(dim):
            raise WindowError(f"group of size {window.group_size(dim)} exceeds the enumeration guard")
        self.window = window
        self.dim = dim
        self.codes = np.unique(np.asarray(codes, dtype=np.int64))

    @classmethod
    def generated_by(cls, window: Window, dim: int, vectors) -> "FiniteLattice":
        if not window.fits(dim):
            raise WindowError(f"group of size {window.group_size(dim)} exceeds the enumeration guard")
        N = window.modulus
        X = np.array(vectors, dtype=np.int64).reshape(-1, dim)
        codes = _close(np.zeros(1, dtype=np.int64), _encode(X, N), N, dim)
        return cls(window, dim, codes)

    @property
    def elements(self) -> set[tuple[int, ...]]:
        return {tuple(int(x) for x in row) for row in _decode(self.codes, self.window.modulus, self.dim)}

    def vectors(self) -> np.ndarray:
        return _decode(self.codes, self.window.modulus, self.dim)

    def generating_set(self) -> list[np.ndarray]:
        N, dim = self.window.modulus, self.dim
        cur = np.zeros(1, dtype=np.int64)
        gens = []
        rest = np.setdiff1d(self.codes, cur)
        while len(rest):
            g = _decode(rest[:1], N, dim)[0]
            gens.append(g)
            cur = _add_cyclic(cur, g, N, dim)
            rest = np.setdiff1d(rest, cur, assume_unique=True)
        return gens

    def __len__(self):
        return len(self.codes)

    def __eq__(self, other):
        if not isinstance(other, FiniteLattice):
            return NotImplemented
        return (
            self.window == other.window
            and self.dim == other.dim
            and np.array_equal(self.codes, other.codes)
        )

    def __repr__(self):
        return f"FiniteLattice(p={self.window.ctx.p}, a={self.window.a}, dim={self.dim}, order={len(self)})"


def _same_window(F: FiniteLattice, G: FiniteLattice, same_dim: bool = True) -> None:
    if F.window != G.window:
        raise ContextMismatch("finite lattices live in different windows")
    if same_dim and F.dim != G.dim:
        raise ContextMismatch(f"dimension mismatch: {F.dim} vs {G.dim}")


def in_window(L: Lattice, w: Window) -> bool:
    p, a = w.ctx.p, w.a
    inner = all(member(L, [Fraction(p) ** a if i == k else 0 for i in range(L.n)]) for k in range(L.n))
    outer = all(valuation(w.ctx, x) >= -a for row in L.basis.entries for x in row if x)
    return inner and outer


def project_to_window(L: Lattice, w: Window) -> FiniteLattice:
    L.ctx.check(w.ctx)
    if not in_window(L, w):
        raise WindowError(f"lattice is not squeezed between p^{w.a} O^n and p^-{w.a} O^n")
    scale = Fraction(w.ctx.p) ** w.a
    gens = [
        [int(reduce_mod_power(w.ctx, scale * x, 2 * w.a)) for x in col]
        for col in L.generators()
    ]
    return FiniteLattice.generated_by(w, L.n, gens)


def lift_from_window(F: FiniteLattice) -> Lattice:
    w = F.window
    p, a = w.ctx.p, w.a
    inv = Fraction(p) ** (-a)
    gens = [[inv * int(x) for x in g] for g in F.generating_set()]
    gens += [[Fraction(p) ** a if i == k else 0 for i in range(F.dim)] for k in range(F.dim)]
    return from_generators(w.ctx, F.dim, gens)


def oracle_sum(F: FiniteLattice, G: FiniteLattice) -> FiniteLattice:
    _same_window(F, G)
    return FiniteLattice(F.window, F.dim, _close(F.codes, G.codes, F.window.modulus, F.dim))


def oracle_meet(F: FiniteLattice, G: FiniteLattice) -> FiniteLattice:
    _same_window(F, G)
    return FiniteLattice(F.window, F.dim, np.intersect1d(F.codes, G.codes))


def _ilog(x: int, p: int) -> int:
    e = 0
    while x > 1:
        if x % p:
            raise ArithmeticError(f"{x} is not a power of {p}")
        x //= p
        e += 1
    return e


def _quotient_type(G: FiniteLattice, I: np.ndarray) -> list[int]:
    """Cyclic-factor exponents of ``G / I`` from element-order counts."""
    w = G.window
    p, N = w.ctx.p, w.modulus
    X = G.vectors()
    logs = [0]
    for i in range(1, 2 * w.a + 1):
        hits = np.isin(_encode(X * p**i, N), I).sum()
        logs.append(_ilog(int(hits) // len(I), p))
    # logs[i] - logs[i-1] counts the cyclic factors of order >= p**i
    ge = [logs[i] - logs[i - 1] for i in range(1, len(logs))]
    if not ge or ge[0] == 0:
        return []
    return sorted((sum(1 for r in ge if r >= j) for j in range(1, ge[0] + 1)), reverse=True)


def oracle_group_invariants(F: FiniteLattice, G: FiniteLattice) -> tuple[list[int], list[int]]:
    """Exponents of ``G/(F & G)`` and of ``F/(F & G)``."""
    _same_window(F, G)
    I = np.intersect1d(F.codes, G.codes)
    return _quotient_type(G, I), _quotient_type(F, I)


def oracle_distance(F: FiniteLattice, G: FiniteLattice) -> list[int]:
    pos, neg = oracle_group_invariants(F, G)
    zeros = F.dim - len(pos) - len(neg)
    return sorted(pos + [0] * zeros + [-x for x in neg], reverse=True)


def oracle_act(Hf: FiniteLattice, Rf: FiniteLattice) -> FiniteLattice:
    """``{w : (v, w) in Hf for some v in Rf}`` by direct scan."""
    _same_window(Hf, Rf, same_dim=False)
    n = Rf.dim
    if Hf.dim != 2 * n:
        raise ContextMismatch("relation and lattice dimensions disagree")
    N = Hf.window.modulus
    X = Hf.vectors()
    hit = np.isin(_encode(X[:, :n], N), Rf.codes)
    return FiniteLattice(Hf.window, n, _encode(X[hit, n:], N))


def oracle_compose(Gf: FiniteLattice, Hf: FiniteLattice) -> FiniteLattice:
    """``{(v, y) : (v, w) in Hf and (w, y) in Gf for some w}``."""
    _same_window(Gf, Hf)
    dim = Hf.dim
    n = dim // 2
    N = Hf.window.modulus
    Xg = Gf.vectors()
    wg = _encode(Xg[:, :n], N)
    yg = Xg[:, n:]
    # the fibre of Gf over w is y0(w) + K with K = {y : (0, y) in Gf}
    K = yg[wg == 0]
    order = np.argsort(wg, kind="stable")
    wg_sorted = wg[order]
    first = np.unique(wg_sorted, return_index=True)
    dom_codes, first_idx = first
    y0 = yg[order[first_idx]]

    Xh = Hf.vectors()
    wh = _encode(Xh[:, n:], N)
    ok = np.isin(wh, dom_codes)
    pos = np.searchsorted(dom_codes, wh[ok])
    pairs = np.concatenate([Xh[ok, :n], y0[pos]], axis=1)
    base = _encode(np.concatenate([np.zeros_like(K), K], axis=1), N)
    codes = _close(np.unique(base), np.unique(_encode(pairs, N)), N, dim)
    return FiniteLattice(Hf.window, dim, codes)
