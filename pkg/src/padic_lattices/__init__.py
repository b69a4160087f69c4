"""Lattices over the p-adic integers, their complex distance, and the
semigroup of lattice relations acting on them."""

from .lattice import (
    ComplexDistance,
    Lattice,
    Subspace,
    adapted_basis,
    complex_distance,
    direct_sum,
    dual,
    equal,
    from_basis,
    from_generators,
    is_sublattice,
    lattice_sum,
    maximin_value,
    meet,
    member,
    minimax_value,
    norm,
    project,
    quotient_invariants,
    ratio_exponent,
    restrict_to_subspace,
    transform,
)
from .linalg import (
    RankError,
    RationalMatrix,
    determinant,
    hnf_canonical,
    inverse,
    kernel_sublattice,
    smith_form,
    snf_exponents,
)
from .padic import INF, ContextMismatch, PadicContext, format_scalar, parse_scalar, reduce_mod_power, valuation
from .semigroup import (
    Relation,
    act,
    compose,
    decomposition_identity,
    dom,
    graph_approx,
    graph_threshold,
    im,
    indef,
    ker,
    structure_map,
)

__version__ = "0.1.0"

__all__ = [
    "ComplexDistance",
    "ContextMismatch",
    "INF",
    "Lattice",
    "PadicContext",
    "RankError",
    "RationalMatrix",
    "Relation",
    "Subspace",
    "act",
    "adapted_basis",
    "complex_distance",
    "compose",
    "decomposition_identity",
    "determinant",
    "direct_sum",
    "dom",
    "dual",
    "equal",
    "format_scalar",
    "from_basis",
    "from_generators",
    "graph_approx",
    "graph_threshold",
    "hnf_canonical",
    "im",
    "indef",
    "inverse",
    "is_sublattice",
    "ker",
    "kernel_sublattice",
    "lattice_sum",
    "maximin_value",
    "meet",
    "member",
    "minimax_value",
    "norm",
    "parse_scalar",
    "project",
    "quotient_invariants",
    "ratio_exponent",
    "reduce_mod_power",
    "restrict_to_subspace",
    "smith_form",
    "snf_exponents",
    "structure_map",
    "transform",
    "valuation",
]
