"""Exact scalars viewed inside the p-adic field.

Scalars are plain :class:`fractions.Fraction` values; the prime lives in a
:class:`PadicContext` that is threaded through every composite object.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

ExactScalar = Fraction
ScalarLike = Union[int, Fraction, str]

INF = math.inf

_SCALAR_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class ContextMismatch(ValueError):
    """Objects built over different primes or dimensions were combined."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def vp_int(x: int, p: int) -> int:
    """Valuation of a nonzero integer."""
    if p == 2:
        return (x & -x).bit_length() - 1
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def split_int(x: int, p: int) -> tuple[int, int]:
    """Write a nonzero integer as ``p**v * u`` and return ``(v, u)``."""
    v = vp_int(x, p)
    return v, x // p**v


@dataclass(frozen=True)
class PadicContext:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise ValueError(f"p must be a prime integer, got {self.p!r}")

    def valuation(self, x: ScalarLike) -> Union[int, float]:
        return valuation(self, x)

    def reduce_mod_power(self, x: ScalarLike, k: int) -> Fraction:
        return reduce_mod_power(self, x, k)

    def check(self, other: "PadicContext") -> None:
        if self.p != other.p:
            raise ContextMismatch(f"p mismatch: {self.p} vs {other.p}")


def as_scalar(x: ScalarLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def valuation(ctx: PadicContext, x: ScalarLike) -> Union[int, float]:
    """p-adic valuation; ``math.inf`` for zero."""
    x = as_scalar(x)
    if x == 0:
        return INF
    return vp_int(x.numerator, ctx.p) - vp_int(x.denominator, ctx.p)


def reduce_mod_power(ctx: PadicContext, x: ScalarLike, k: int) -> Fraction:
    """Canonical representative ``m / p**t`` of the coset ``x + p**k O``.

    ``t = max(0, -v(x))`` and ``0 <= m < p**(k + t)``.
    """
    x = as_scalar(x)
    v = valuation(ctx, x)
    if v >= k:
        return Fraction(0)
    p = ctx.p
    t = max(0, -v)
    y = x * p**t  # now a p-adic integer
    mod = p ** (k + t)
    m = y.numerator * pow(y.denominator, -1, mod) % mod
    return Fraction(m, p**t)


# Arithmetic is Fraction arithmetic; these exist so the scalar surface is named.

def add(x: ScalarLike, y: ScalarLike) -> Fraction:
    return as_scalar(x) + as_scalar(y)


def sub(x: ScalarLike, y: ScalarLike) -> Fraction:
    return as_scalar(x) - as_scalar(y)


def mul(x: ScalarLike, y: ScalarLike) -> Fraction:
    return as_scalar(x) * as_scalar(y)


def neg(x: ScalarLike) -> Fraction:
    return -as_scalar(x)


def inv(x: ScalarLike) -> Fraction:
    x = as_scalar(x)
    if x == 0:
        raise ZeroDivisionError("cannot invert zero")
    return 1 / x


def parse_scalar(s: str) -> Fraction:
    """Parse ``"m"`` or ``"m/d"`` (optional leading ``-``)."""
    m = _SCALAR_RE.match(s)
    if not m:
        raise ValueError(f"malformed scalar {s!r}")
    num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {s!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_scalar(x: ScalarLike) -> str:
    x = as_scalar(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
