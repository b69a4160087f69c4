"""JSON envelopes for lattices, relations, matrices and vectors.

Lattice: ``{"p": 2, "n": 2, "generators": [["1", "0"], ["1/2", "1"]]}``, one
inner array per generator. Relations use the same envelope with generators of
length 2n and ``"blocks": ["source", "target"]``. Scalars are strings ``"m"``
or ``"m/d"``.
"""

from __future__ import annotations

from typing import Any

from .lattice import Lattice, from_generators
from .linalg import RationalMatrix
from .padic import PadicContext, format_scalar, parse_scalar
from .semigroup import Relation

BLOCKS = ["source", "target"]


class EnvelopeError(ValueError):
    """Malformed JSON input; the message names the offending field."""


def _field(obj: Any, name: str):
    if not isinstance(obj, dict):
        raise EnvelopeError("top level: expected a JSON object")
    if name not in obj:
        raise EnvelopeError(f"{name}: missing field")
    return obj[name]


def _int_field(obj, name: str) -> int:
    v = _field(obj, name)
    if not isinstance(v, int) or isinstance(v, bool):
        raise EnvelopeError(f"{name}: expected an integer, got {v!r}")
    return v


def _ctx(obj) -> PadicContext:
    p = _int_field(obj, "p")
    try:
        return PadicContext(p)
    except ValueError as e:
        raise EnvelopeError(f"p: {e}") from None


def parse_vector(data, length: int = None, field: str = "vector"):
    if not isinstance(data, list):
        raise EnvelopeError(f"{field}: expected an array of scalar strings")
    out = []
    for i, x in enumerate(data):
        if isinstance(x, int) and not isinstance(x, bool):
            x = str(x)
        if not isinstance(x, str):
            raise EnvelopeError(f"{field}[{i}]: expected a scalar string, got {x!r}")
        try:
            out.append(parse_scalar(x))
        except ValueError as e:
            raise EnvelopeError(f"{field}[{i}]: {e}") from None
    if length is not None and len(out) != length:
        raise EnvelopeError(f"{field}: expected length {length}, got {len(out)}")
    return out


def vector_to_json(v) -> list[str]:
    return [format_scalar(x) for x in v]


def _generators(obj, dim: int) -> list:
    gens = _field(obj, "generators")
    if not isinstance(gens, list):
        raise EnvelopeError("generators: expected an array of vectors")
    return [parse_vector(g, dim, f"generators[{i}]") for i, g in enumerate(gens)]


def lattice_from_json(obj) -> Lattice:
    ctx = _ctx(obj)
    n = _int_field(obj, "n")
    if n < 1:
        raise EnvelopeError("n: must be positive")
    gens = _generators(obj, n)
    try:
        return from_generators(ctx, n, gens)
    except ValueError as e:
        raise EnvelopeError(f"generators: {e}") from None


def lattice_to_json(L: Lattice) -> dict:
    return {"p": L.p, "n": L.n, "generators": [vector_to_json(c) for c in L.generators()]}


def relation_from_json(obj) -> Relation:
    ctx = _ctx(obj)
    n = _int_field(obj, "n")
    if n < 1:
        raise EnvelopeError("n: must be positive")
    if "blocks" in obj and obj["blocks"] != BLOCKS:
        raise EnvelopeError(f"blocks: expected {BLOCKS}")
    gens = _generators(obj, 2 * n)
    try:
        return Relation.from_generators(ctx, n, gens)
    except ValueError as e:
        raise EnvelopeError(f"generators: {e}") from None


def relation_to_json(H: Relation) -> dict:
    return {
        "p": H.ctx.p,
        "n": H.n,
        "blocks": list(BLOCKS),
        "generators": [vector_to_json(c) for c in H.carrier.generators()],
    }


def matrix_from_json(data, field: str = "matrix") -> RationalMatrix:
    if not isinstance(data, list) or not data:
        raise EnvelopeError(f"{field}: expected a non-empty array of rows")
    rows = [parse_vector(r, len(data[0]) if isinstance(data[0], list) else None, f"{field}[{i}]")
            for i, r in enumerate(data)]
    return RationalMatrix(rows)


def matrix_to_json(M: RationalMatrix) -> list[list[str]]:
    return [vector_to_json(r) for r in M.entries]
