"""Randomized verification harnesses.

Each check draws one instance per trial from a per-trial RNG and returns a
counterexample dict when the property fails (``None`` otherwise).
:func:`run` turns that into a :class:`Report`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import jsonio
from .lattice import (
    Lattice,
    Subspace,
    adapted_basis,
    complex_distance,
    dual,
    is_sublattice,
    lattice_sum,
    meet,
    maximin_value,
    minimax_value,
    quotient_invariants,
    ratio_exponent,
    transform,
    direct_sum,
)
from .linalg import RationalMatrix, hnf_canonical, snf_exponents, determinant
from .oracle import (
    Window,
    lift_from_window,
    oracle_act,
    oracle_compose,
    oracle_group_invariants,
    oracle_meet,
    oracle_sum,
    project_to_window,
)
from .padic import PadicContext, valuation
from .sampling import (
    RandomSpec,
    random_invertible,
    random_lattice,
    random_matrix,
    random_relation,
    random_subspace,
    random_unimodular,
    random_vector,
)
from .semigroup import (
    act,
    compose,
    compose_via_kernel,
    decomposition_identity,
    dom,
    graph_approx,
    graph_threshold,
    im,
    indef,
    ker,
)

Check = Callable[[random.Random, PadicContext, int, int], Optional[dict]]


@dataclass
class Report:
    name: str
    trials: int = 0
    violations: int = 0
    first_counterexample: Optional[dict] = None
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def to_json(self) -> dict:
        out = {
            "check": self.name,
            "trials": self.trials,
            "violations": self.violations,
            "first_counterexample": self.first_counterexample,
        }
        out.update(self.stats)
        return out


def between(x: int, bound: int) -> bool:
    """x lies between 0 and bound (either sign)."""
    return 0 <= x <= bound if bound >= 0 else bound <= x <= 0


def strictly_between(x: int, bound: int) -> bool:
    return 0 < x < bound if bound >= 0 else bound < x < 0


def run(name: str, check: Check, spec: RandomSpec) -> Report:
    report = Report(name)
    ctx = spec.ctx
    for i in range(spec.trials):
        bad = check(spec.rng(i), ctx, spec.n, spec.bound)
        report.trials += 1
        if bad is not None:
            report.violations += 1
            if report.first_counterexample is None:
                report.first_counterexample = {"trial": i, **bad}
    return report


def _lat(L: Lattice) -> dict:
    return jsonio.lattice_to_json(L)


def _rel(H) -> dict:
    return jsonio.relation_to_json(H)


# ---------------------------------------------------------------------------
# main theorem

def theorem_trial(rng, ctx, n, bound):
    """Returns ``(counterexample or None, strict)``."""
    H = random_relation(rng, ctx, n, bound)
    R = random_lattice(rng, ctx, n, bound)
    S = random_lattice(rng, ctx, n, bound)
    k = complex_distance(R, S)
    k_img = complex_distance(act(H, R), act(H, S))
    strict = any(strictly_between(b, a) for a, b in zip(k, k_img))
    if all(between(b, a) for a, b in zip(k, k_img)):
        return None, strict
    return {"H": _rel(H), "R": _lat(R), "S": _lat(S), "k": list(k), "k_image": list(k_img)}, strict


def check_theorem(spec: RandomSpec) -> Report:
    report = Report("theorem")
    strict = 0
    for i in range(spec.trials):
        bad, s = theorem_trial(spec.rng(i), spec.ctx, spec.n, spec.bound)
        report.trials += 1
        strict += s
        if bad is not None:
            report.violations += 1
            if report.first_counterexample is None:
                report.first_counterexample = {"trial": i, **bad}
    report.stats["strict_compressions"] = strict
    return report


# ---------------------------------------------------------------------------
# lemmas

def minimax_check(rng, ctx, n, bound, samples: int = 10):
    """Minimax: sampled subspaces bound k_j; adapted subspaces attain it."""
    R = random_lattice(rng, ctx, n, bound)
    S = random_lattice(rng, ctx, n, bound)
    k = complex_distance(R, S)
    F = adapted_basis(R, S)
    cols = F.columns()
    for j in range(1, n + 1):
        head = Subspace.span(ctx, cols[:j])
        tail = Subspace.span(ctx, cols[j - 1:])
        if minimax_value(R, S, head) != k[j - 1] or maximin_value(R, S, tail) != k[j - 1]:
            return {"R": _lat(R), "S": _lat(S), "j": j, "reason": "not attained on adapted subspace"}
    for _ in range(samples):
        j = rng.randint(1, n)
        W = random_subspace(rng, ctx, n, j, bound)
        lo = minimax_value(R, S, W)
        V = random_subspace(rng, ctx, n, n - j + 1, bound)
        hi = maximin_value(R, S, V)
        if lo > k[j - 1] or hi < k[j - 1]:
            return {"R": _lat(R), "S": _lat(S), "j": j, "minimax": lo, "maximin": hi, "k": list(k)}
        # the restricted values really are the extreme ratios
        for _ in range(3):
            c = random_vector(rng, ctx, j, bound)
            v = W.basis.apply(c)
            c2 = random_vector(rng, ctx, n - j + 1, bound)
            w = V.basis.apply(c2)
            if ratio_exponent(R, S, v) < lo or ratio_exponent(R, S, w) > hi:
                return {"R": _lat(R), "S": _lat(S), "j": j, "reason": "sampled vector beats the extremum"}
    return None


def quotient_invariants_check(rng, ctx, n, bound):
    w = Window(ctx, bound)
    L = random_lattice(rng, ctx, n, bound)
    M = random_lattice(rng, ctx, n, bound)
    got = quotient_invariants(L, M)
    want = oracle_group_invariants(project_to_window(L, w), project_to_window(M, w))
    if tuple(got) != tuple(want):
        return {"L": _lat(L), "M": _lat(M), "lattice": list(got), "oracle": list(want)}
    return None


def dual_distance(rng, ctx, n, bound):
    L = random_lattice(rng, ctx, n, bound)
    M = random_lattice(rng, ctx, n, bound)
    if complex_distance(L, M) != complex_distance(dual(M), dual(L)):
        return {"L": _lat(L), "M": _lat(M)}
    return None


def double_dual(rng, ctx, n, bound):
    L = random_lattice(rng, ctx, n, bound)
    if dual(dual(L)) != L:
        return {"L": _lat(L)}
    return None


def de_morgan(rng, ctx, n, bound):
    L = random_lattice(rng, ctx, n, bound)
    M = random_lattice(rng, ctx, n, bound)
    if dual(lattice_sum(L, M)) != meet(dual(L), dual(M)) or dual(meet(L, M)) != lattice_sum(dual(L), dual(M)):
        return {"L": _lat(L), "M": _lat(M)}
    return None


def _three(rng, ctx, n, bound):
    return tuple(random_lattice(rng, ctx, n, bound) for _ in range(3))


def meet_compression(rng, ctx, n, bound):
    L, M, N = _three(rng, ctx, n, bound)
    k = complex_distance(M, N)
    k2 = complex_distance(meet(L, M), meet(L, N))
    if not all(between(b, a) for a, b in zip(k, k2)):
        return {"L": _lat(L), "M": _lat(M), "N": _lat(N), "k": list(k), "k_meet": list(k2)}
    return None


def norm_ratio(rng, ctx, n, bound):
    L, M, N = _three(rng, ctx, n, bound)
    v = random_vector(rng, ctx, n, bound)
    a = ratio_exponent(meet(L, M), meet(L, N), v)
    b = ratio_exponent(M, N, v)
    if not between(a, b):
        return {"L": _lat(L), "M": _lat(M), "N": _lat(N), "v": jsonio.vector_to_json(v)}
    return None


def sum_compression(rng, ctx, n, bound):
    L, M, N = _three(rng, ctx, n, bound)
    k = complex_distance(M, N)
    k2 = complex_distance(lattice_sum(L, M), lattice_sum(L, N))
    if not all(between(b, a) for a, b in zip(k, k2)):
        return {"L": _lat(L), "M": _lat(M), "N": _lat(N), "k": list(k), "k_sum": list(k2)}
    return None


def decomposition(rng, ctx, n, bound):
    H = random_relation(rng, ctx, n, bound)
    L = random_lattice(rng, ctx, n, bound)
    D, K, I, N = dom(H), ker(H), im(H), indef(H)
    if complex_distance(D, K) != complex_distance(I, N):
        return {"H": _rel(H), "reason": "dom/ker and im/indef invariants differ"}
    if not (is_sublattice(direct_sum(K, N), H.carrier) and is_sublattice(H.carrier, direct_sum(D, I))):
        return {"H": _rel(H), "reason": "sandwich ker+indef <= H <= dom+im fails"}
    if not decomposition_identity(H, L):
        return {"H": _rel(H), "L": _lat(L), "reason": "H L != g (L & dom) + indef"}
    return None


def associativity(rng, ctx, n, bound):
    F, G, H = (random_relation(rng, ctx, n, bound) for _ in range(3))
    if compose(F, compose(G, H)) != compose(compose(F, G), H):
        return {"F": _rel(F), "G": _rel(G), "H": _rel(H)}
    return None


def action_compatibility(rng, ctx, n, bound):
    G, H = random_relation(rng, ctx, n, bound), random_relation(rng, ctx, n, bound)
    R = random_lattice(rng, ctx, n, bound)
    if act(compose(G, H), R) != act(G, act(H, R)):
        return {"G": _rel(G), "H": _rel(H), "R": _lat(R)}
    return None


def compose_routes(rng, ctx, n, bound):
    G, H = random_relation(rng, ctx, n, bound), random_relation(rng, ctx, n, bound)
    if compose(G, H) != compose_via_kernel(G, H):
        return {"G": _rel(G), "H": _rel(H)}
    return None


def graph_stabilization(rng, ctx, n, bound):
    g = random_invertible(rng, ctx, n, bound)
    R = random_lattice(rng, ctx, n, bound)
    t = graph_threshold(ctx, g, bound)
    target = transform(g, R)
    prev = None
    for j in (t + 1, t + 2):
        got = act(graph_approx(ctx, g, j), R)
        if got != target or (prev is not None and got != prev):
            return {"g": jsonio.matrix_to_json(g), "R": _lat(R), "j": j, "threshold": t}
        prev = got
    return None


def canonicalization(rng, ctx, n, bound):
    M = random_matrix(rng, ctx, n, n + rng.randint(0, n), bound)
    H = hnf_canonical(ctx, M)
    U = RationalMatrix(random_unimodular(rng, ctx.p, M.cols, bound))
    if hnf_canonical(ctx, H) != H or hnf_canonical(ctx, M @ U) != H:
        return {"M": jsonio.matrix_to_json(M), "reason": "hnf not idempotent/invariant"}
    A = random_matrix(rng, ctx, n, n, bound)
    e = snf_exponents(ctx, A)
    U1 = RationalMatrix(random_unimodular(rng, ctx.p, n, bound))
    U2 = RationalMatrix(random_unimodular(rng, ctx.p, n, bound))
    if snf_exponents(ctx, U1 @ A @ U2) != e or sum(e) != valuation(ctx, determinant(A)):
        return {"A": jsonio.matrix_to_json(A), "reason": "snf exponents not invariant"}
    return None


LEMMA_CHECKS: dict[str, Check] = {
    "minimax": minimax_check,
    "quotient_invariants": quotient_invariants_check,
    "dual_distance": dual_distance,
    "double_dual": double_dual,
    "de_morgan": de_morgan,
    "meet_compression": meet_compression,
    "norm_ratio": norm_ratio,
    "sum_compression": sum_compression,
    "decomposition": decomposition,
    "associativity": associativity,
    "action_compatibility": action_compatibility,
    "compose_routes": compose_routes,
    "graph_stabilization": graph_stabilization,
    "canonicalization": canonicalization,
}


def check_lemmas(spec: RandomSpec, names=None) -> list[Report]:
    names = list(LEMMA_CHECKS) if names is None else names
    out = []
    for name in names:
        check = LEMMA_CHECKS[name]
        if name == "quotient_invariants":
            # the oracle enumerates (Z/p^2a)^n, so shrink the window to fit
            a = spec.bound
            while a > 0 and not Window(spec.ctx, a).fits(spec.n):
                a -= 1
            sub = RandomSpec(spec.seed, spec.p, spec.n, a, spec.trials)
            out.append(run(name, check, sub))
        else:
            out.append(run(name, check, spec))
    return out


# ---------------------------------------------------------------------------
# oracle equivalence

def _oracle_pair(rng, ctx, n, a):
    w = Window(ctx, a)
    L, M = random_lattice(rng, ctx, n, a), random_lattice(rng, ctx, n, a)
    return w, L, M, project_to_window(L, w), project_to_window(M, w)


def oracle_sum_check(rng, ctx, n, a):
    w, L, M, Lf, Mf = _oracle_pair(rng, ctx, n, a)
    if project_to_window(lattice_sum(L, M), w) != oracle_sum(Lf, Mf):
        return {"L": _lat(L), "M": _lat(M)}
    return None


def oracle_meet_check(rng, ctx, n, a):
    w, L, M, Lf, Mf = _oracle_pair(rng, ctx, n, a)
    if project_to_window(meet(L, M), w) != oracle_meet(Lf, Mf):
        return {"L": _lat(L), "M": _lat(M)}
    return None


def oracle_distance_check(rng, ctx, n, a):
    w, L, M, Lf, Mf = _oracle_pair(rng, ctx, n, a)
    if tuple(quotient_invariants(L, M)) != tuple(oracle_group_invariants(Lf, Mf)):
        return {"L": _lat(L), "M": _lat(M)}
    return None


def oracle_act_check(rng, ctx, n, a):
    w = Window(ctx, a)
    H = random_relation(rng, ctx, n, a)
    R = random_lattice(rng, ctx, n, a)
    got = project_to_window(act(H, R), w)
    if got != oracle_act(project_to_window(H.carrier, w), project_to_window(R, w)):
        return {"H": _rel(H), "R": _lat(R)}
    return None


def oracle_compose_check(rng, ctx, n, a):
    w = Window(ctx, a)
    G, H = random_relation(rng, ctx, n, a), random_relation(rng, ctx, n, a)
    got = project_to_window(compose(G, H).carrier, w)
    if got != oracle_compose(project_to_window(G.carrier, w), project_to_window(H.carrier, w)):
        return {"G": _rel(G), "H": _rel(H)}
    return None


def oracle_roundtrip_check(rng, ctx, n, a):
    w = Window(ctx, a)
    L = random_lattice(rng, ctx, n, a)
    F = project_to_window(L, w)
    if lift_from_window(F) != L or project_to_window(lift_from_window(F), w) != F:
        return {"L": _lat(L)}
    return None


ORACLE_CHECKS: dict[str, tuple[Check, int]] = {
    # name -> (check, dimension multiplier of the largest enumerated group)
    "sum": (oracle_sum_check, 1),
    "meet": (oracle_meet_check, 1),
    "distance": (oracle_distance_check, 1),
    "act": (oracle_act_check, 2),
    "compose": (oracle_compose_check, 2),
    "roundtrip": (oracle_roundtrip_check, 1),
}


def oracle_diff(spec: RandomSpec, names=None) -> list[Report]:
    """Compare lattice operations against the finite oracle; ``spec.bound`` is the window."""
    names = list(ORACLE_CHECKS) if names is None else names
    w = Window(spec.ctx, spec.bound)
    out = []
    for name in names:
        check, mult = ORACLE_CHECKS[name]
        if not w.fits(mult * spec.n):
            out.append(Report(name, stats={"skipped": f"group of size {w.group_size(mult * spec.n)} exceeds guard"}))
            continue
        out.append(run(name, check, spec))
    return out
