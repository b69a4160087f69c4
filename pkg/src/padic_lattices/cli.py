"""Command-line interface.

Inputs are JSON files (``-`` reads stdin); results go to stdout as JSON, or to
``--out``. Check commands exit 1 when any property is violated.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import jsonio
from .checks import LEMMA_CHECKS, check_lemmas, check_theorem, oracle_diff
from .lattice import (
    complex_distance,
    dual,
    lattice_sum,
    meet,
    member,
    norm,
)
from .padic import ContextMismatch, PadicContext
from .sampling import RandomSpec
from .semigroup import (
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

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


def _load(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise jsonio.EnvelopeError(f"{path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise jsonio.EnvelopeError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None


def _lattice(path):
    return jsonio.lattice_from_json(_load(path))


def _relation(path):
    return jsonio.relation_from_json(_load(path))


def _vector(path, n):
    data = _load(path)
    if isinstance(data, dict):
        data = data.get("vector")
    return jsonio.parse_vector(data, n)


def _norm_json(m):
    return "-inf" if m == float("-inf") else m


def cmd_canon(args):
    return jsonio.lattice_to_json(_lattice(args.lattice))


def cmd_dist(args):
    return {"k": list(complex_distance(_lattice(args.R), _lattice(args.S)))}


def cmd_sum(args):
    return jsonio.lattice_to_json(lattice_sum(_lattice(args.L), _lattice(args.M)))


def cmd_meet(args):
    return jsonio.lattice_to_json(meet(_lattice(args.L), _lattice(args.M)))


def cmd_dual(args):
    return jsonio.lattice_to_json(dual(_lattice(args.lattice)))


def cmd_norm(args):
    L = _lattice(args.lattice)
    return {"exponent": _norm_json(norm(L, _vector(args.vector, L.n)))}


def cmd_member(args):
    L = _lattice(args.lattice)
    return {"member": member(L, _vector(args.vector, L.n))}


def cmd_rel_parts(args):
    H = _relation(args.relation)
    return {name: jsonio.lattice_to_json(f(H)) for name, f in
            (("dom", dom), ("im", im), ("ker", ker), ("indef", indef))}


def cmd_rel_act(args):
    return jsonio.lattice_to_json(act(_relation(args.relation), _lattice(args.lattice)))


def cmd_rel_compose(args):
    return jsonio.relation_to_json(compose(_relation(args.G), _relation(args.H)))


def cmd_rel_structure(args):
    H = _relation(args.relation)
    out = {"g": jsonio.matrix_to_json(structure_map(H))}
    if args.lattice:
        out["decomposition_holds"] = decomposition_identity(H, _lattice(args.lattice))
    return out


def cmd_graph_approx(args):
    data = _load(args.matrix)
    if not isinstance(data, dict):
        raise jsonio.EnvelopeError("top level: expected {\"p\": ..., \"matrix\": [...]}")
    p = data.get("p")
    if not isinstance(p, int):
        raise jsonio.EnvelopeError("p: expected an integer")
    ctx = PadicContext(p)
    g = jsonio.matrix_from_json(data.get("matrix"))
    t = graph_threshold(ctx, g, args.window)
    j = t + 1 if args.j is None else args.j
    return {
        "threshold": t,
        "j": j,
        "above_threshold": j > t,
        "relation": jsonio.relation_to_json(graph_approx(ctx, g, j)),
    }


def _spec(args) -> RandomSpec:
    return RandomSpec(seed=args.seed, p=args.p, n=args.n, bound=args.bound, trials=args.trials)


def _reports_out(reports, args):
    violations = sum(r.violations for r in reports)
    out = {
        "trials": sum(r.trials for r in reports),
        "violations": violations,
        "first_counterexample": next((r.first_counterexample for r in reports if r.first_counterexample), None),
        "checks": [r.to_json() for r in reports],
    }
    return out, (EXIT_OK if violations == 0 else EXIT_VIOLATION)


def cmd_check_theorem(args):
    r = check_theorem(_spec(args))
    out = {
        "trials": r.trials,
        "violations": r.violations,
        "first_counterexample": r.first_counterexample,
        **r.stats,
    }
    return out, (EXIT_OK if r.ok else EXIT_VIOLATION)


def cmd_check_lemmas(args):
    return _reports_out(check_lemmas(_spec(args), args.only), args)


def cmd_oracle_diff(args):
    spec = RandomSpec(seed=args.seed, p=args.p, n=args.n, bound=args.window, trials=args.trials)
    return _reports_out(oracle_diff(spec), args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="padic-lattices", description=__doc__.splitlines()[0])
    parser.add_argument("--out", help="write the JSON result to this path instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, *positional, help=None):
        sp = sub.add_parser(name, help=help)
        for arg in positional:
            sp.add_argument(arg)
        sp.add_argument("--out", default=argparse.SUPPRESS, help="write the JSON result to this path")
        sp.set_defaults(func=func)
        return sp

    add("canon", cmd_canon, "lattice", help="canonical basis of a lattice")
    add("dist", cmd_dist, "R", "S", help="complex distance k(R, S)")
    add("sum", cmd_sum, "L", "M", help="L + M")
    add("meet", cmd_meet, "L", "M", help="L & M")
    add("dual", cmd_dual, "lattice", help="dual lattice")
    add("norm", cmd_norm, "lattice", "vector", help="norm exponent of a vector")
    add("member", cmd_member, "lattice", "vector", help="membership test")
    add("rel-parts", cmd_rel_parts, "relation", help="dom, im, ker, indef of a relation")
    add("rel-act", cmd_rel_act, "relation", "lattice", help="H . R")
    add("rel-compose", cmd_rel_compose, "G", "H", help="G . H (H first)")
    sp = add("rel-structure", cmd_rel_structure, "relation", help="structure map g_H")
    sp.add_argument("--lattice", help="also check the decomposition identity on this lattice")
    sp = add("graph-approx", cmd_graph_approx, "matrix", help="lattice approximation of a graph")
    sp.add_argument("--window", type=int, default=0, help="window bound a of the lattices to act on")
    sp.add_argument("--j", type=int, default=None, help="approximation index (default: threshold + 1)")

    def add_check(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--p", type=int, default=2)
        sp.add_argument("--n", type=int, default=2)
        sp.add_argument("--trials", type=int, default=100)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--json", dest="json_path", help="also write the full report here")
        sp.add_argument("--out", default=argparse.SUPPRESS, help="write the JSON result to this path")
        sp.set_defaults(func=func, check=True)
        return sp

    sp = add_check("check-theorem", cmd_check_theorem, "compression theorem on random triples")
    sp.add_argument("--bound", type=int, default=3)
    sp = add_check("check-lemmas", cmd_check_lemmas, "supporting lemmas on random instances")
    sp.add_argument("--bound", type=int, default=3)
    sp.add_argument("--only", nargs="+", choices=sorted(LEMMA_CHECKS), help="run a subset of checks")
    sp = add_check("oracle-diff", cmd_oracle_diff, "compare against the finite oracle")
    sp.add_argument("--window", type=int, default=1)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "check", False):
            try:
                PadicContext(args.p)
            except ValueError as e:
                raise jsonio.EnvelopeError(f"--p: {e}") from None
        result = args.func(args)
    except (jsonio.EnvelopeError, ContextMismatch, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    code = EXIT_OK
    if isinstance(result, tuple):
        result, code = result
    text = json.dumps(result, indent=2)
    if getattr(args, "json_path", None):
        with open(args.json_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
