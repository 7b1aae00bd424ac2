"""Command-line front end.

Exit status: 0 on success, 1 on any input or domain error, 2 when ``check``
finds a counterexample.
"""

import argparse
import sys
from pathlib import Path

from . import io
from .asymmetrize import (H, S, S0_STAR, S_STAR, ConeSpec, canonical_asym, check_H,
                          check_property)
from .freespace import (dual_program, dual_solution, kr_norm, kr_program, map_slip_constant,
                        pushforward, sym_free_norm)
from .functions import PointFunction, is_d_monotone, mcshane_extend, ratio_sups, slip_norm
from .lp import LPError
from .polytope import free_ball, render_svg, slip_ball
from .rational import fmt
from .space import SpaceError, adjoin_basepoint, reverse, symmetrize, subspace
from .tree import TreeError, godard_embed, path_metric, tree_asym_norm, tree_sym_norm

DEFAULT_SEED = 1729
DEFAULT_SAMPLES = 20
PROPERTIES = {"S": S, "Sstar": S_STAR, "S0star": S0_STAR, "H": H}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for counterexamples here
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _emit(args, text):
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _space_doc(space):
    return io.dumps(io.space_to_obj(space))


def cmd_validate(args):
    space = io.load_space(args.space)
    print(f"kind: {space.kind}")
    print(f"points: {space.n}")
    print(f"base: {space.base_label}")


def cmd_symmetrize(args):
    _emit(args, _space_doc(symmetrize(io.load_space(args.space), args.mode)))


def cmd_reverse(args):
    _emit(args, _space_doc(reverse(io.load_space(args.space))))


def cmd_adjoin(args):
    _emit(args, _space_doc(adjoin_basepoint(io.load_space(args.space), args.label)))


def cmd_slipnorm(args):
    f = io.load_function(args.function)
    mono, witness = is_d_monotone(f)
    plain, clipped = ratio_sups(f)
    print(f"slip_norm: {fmt(slip_norm(f))}")
    print(f"d_monotone: {'true' if mono else 'false'}")
    if witness:
        print(f"violation: d({witness[0]},{witness[1]}) = 0 "
              f"but f({witness[1]}) > f({witness[0]})")
    print(f"sup_ratio: {'none' if plain is None else fmt(plain)}")
    print(f"sup_clipped_ratio: {'none' if clipped is None else fmt(clipped)}")


def cmd_extend(args):
    f = io.load_function(args.function)
    ext = mcshane_extend(f)
    sub = subspace(f.space, f.domain)
    restricted = PointFunction(sub, {sub.index(f.space.labels[i]): v
                                 for i, v in f.values.items()})
    print(f"# slip_norm on subset: {fmt(slip_norm(restricted))}", file=sys.stderr)
    print(f"# slip_norm of extension: {fmt(slip_norm(ext))}", file=sys.stderr)
    _emit(args, io.dumps(io.function_to_obj(ext)))


def cmd_freenorm(args):
    Q = io.load_molecule(args.molecule)
    method = args.method
    if args.dump_lp:
        if method in ("dual", "all"):
            print("# dual program")
            sys.stdout.write(dual_program(Q).listing())
        if method in ("kr", "all"):
            print("# transport program")
            sys.stdout.write(kr_program(Q).listing())
    if method in ("dual", "all"):
        value, f = dual_solution(Q) if Q else (0, None)
        print(f"dual: {fmt(value)}")
        if f is not None:
            print("maximizer: " + ", ".join(f"{Q.space.labels[i]}={fmt(v)}"
                                            for i, v in f.values.items()))
    if method in ("kr", "all"):
        value, dec = kr_norm(Q)
        print(f"kr: {fmt(value)}")
        for lam, y, z in dec.terms:
            lab = Q.space.labels
            print(f"  {fmt(lam)} * (delta({lab[y]}) - delta({lab[z]}))  cost {fmt(Q.space.d[z][y])}")
    if method in ("sym", "all"):
        print(f"sym ({args.mode}): {fmt(sym_free_norm(Q, args.mode))}")


def _cone(args, metric=None):
    if args.cone == "lplus":
        return ConeSpec.nonneg(), metric
    if not args.tree:
        raise UsageError("--cone monotone needs --tree")
    tree = io.load_tree(args.tree)
    return ConeSpec.tree_monotone(tree), metric or path_metric(tree)


def cmd_asymmetrize(args):
    metric = io.load_space(args.space) if args.space else None
    cone, metric = _cone(args, metric)
    if metric is None:
        raise UsageError("asymmetrize needs --space (or --tree with --cone monotone)")
    _emit(args, _space_doc(canonical_asym(metric, cone)))


def cmd_check(args):
    prop = PROPERTIES[args.property]
    if prop == H:
        if not args.space:
            raise UsageError("check --property H needs --space")
        report, alpha = check_H(io.load_space(args.space), args.mode, args.seed, args.samples)
        doc = report.as_dict()
        doc["alpha"] = fmt(alpha)
    else:
        metric = io.load_space(args.space) if args.space else None
        cone, metric = _cone(args, metric)
        if metric is None:
            raise UsageError("check needs --space (or --tree with --cone monotone)")
        report = check_property(metric, cone, prop, args.seed, args.samples)
        doc = report.as_dict()
    _emit(args, io.dumps(doc))
    return 2 if report.failed else 0


def cmd_ball(args):
    space = io.load_space(args.space)
    if args.emit == "svg":
        _emit(args, render_svg(space, polar=args.polar))
        return
    body = free_ball(space) if args.polar else slip_ball(space)
    doc = {"body": "free-ball" if args.polar else "slip-ball",
           "coordinates": [space.labels[i] for i in space.free_indices],
           "vertices": [[fmt(c) for c in v] for v in body.vertices],
           "rays": [[fmt(c) for c in r] for r in body.rays]}
    _emit(args, io.dumps(doc))


def cmd_tree_norm(args):
    tree = io.load_tree(args.tree)
    space = path_metric(tree)
    Q = io.load_molecule(args.molecule, space)
    for node, flow in godard_embed(tree, Q).items():
        print(f"flow {tree.parent[node]}-{node}: {fmt(flow)}  length {fmt(tree.length[node])}")
    up, down = tree_asym_norm(tree, Q), tree_asym_norm(tree, -Q)
    print(f"asym: {fmt(up)}")
    print(f"asym(-Q): {fmt(down)}")
    print(f"sym: {fmt(tree_sym_norm(tree, Q))}")


def cmd_pushforward(args):
    source, target, mapping = io.load_map(args.map)
    Q = io.load_molecule(args.molecule, source)
    print(f"# slip constant: {fmt(map_slip_constant(mapping, source, target))}",
          file=sys.stderr)
    _emit(args, io.dumps(io.molecule_to_obj(pushforward(mapping, Q, target))))


def build_parser():
    p = _Parser(prog="slipfree", description="Exact semi-Lipschitz free-space computations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text, output=False):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        if output:
            sp.add_argument("-o", "--output", help="write to this file instead of stdout")
        return sp

    sp = add("validate", cmd_validate, "check axioms and print the kind")
    sp.add_argument("space")
    sp = add("symmetrize", cmd_symmetrize, "max or sum symmetrization", output=True)
    sp.add_argument("space")
    sp.add_argument("--mode", choices=("max", "sum"), default="max")
    sp = add("reverse", cmd_reverse, "transpose the distance", output=True)
    sp.add_argument("space")
    sp = add("adjoin", cmd_adjoin, "add a new base point at distance 1", output=True)
    sp.add_argument("space")
    sp.add_argument("--label", default="xbar")
    sp = add("slipnorm", cmd_slipnorm, "semi-Lipschitz constant of a function")
    sp.add_argument("function")
    sp = add("extend", cmd_extend, "extend a function from a subset", output=True)
    sp.add_argument("function")
    sp = add("freenorm", cmd_freenorm, "norms of a molecule")
    sp.add_argument("molecule")
    sp.add_argument("--method", choices=("dual", "kr", "sym", "all"), default="all")
    sp.add_argument("--mode", choices=("max", "sum"), default="sum",
                    help="symmetrization used by --method sym")
    sp.add_argument("--dump-lp", action="store_true", help="print the generated programs")
    sp = add("asymmetrize", cmd_asymmetrize, "cone-induced quasi-metric", output=True)
    sp.add_argument("--space")
    sp.add_argument("--cone", choices=("lplus", "monotone"), default="lplus")
    sp.add_argument("--tree")
    sp = add("check", cmd_check, "test a structural property", output=True)
    sp.add_argument("--property", choices=tuple(PROPERTIES), required=True)
    sp.add_argument("--space")
    sp.add_argument("--cone", choices=("lplus", "monotone"), default="lplus")
    sp.add_argument("--tree")
    sp.add_argument("--mode", choices=("max", "sum"), default="max")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    sp = add("ball", cmd_ball, "unit ball vertices or SVG", output=True)
    sp.add_argument("--space", required=True)
    sp.add_argument("--emit", choices=("json", "svg"), default="json")
    sp.add_argument("--polar", action="store_true", help="free-space ball instead")
    sp = add("tree-norm", cmd_tree_norm, "edge flows and tree norms")
    sp.add_argument("--tree", required=True)
    sp.add_argument("--molecule", required=True)
    sp = add("pushforward", cmd_pushforward, "push a molecule along a point map", output=True)
    sp.add_argument("--map", required=True)
    sp.add_argument("--molecule", required=True)
    return p


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "seed", 0) < 0:
            raise UsageError("--seed must be nonnegative")
        return args.func(args) or 0
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except io.FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SpaceError as exc:
        where = f" at ({','.join(map(str, exc.witness))})" if exc.witness else ""
        print(f"error [{exc.axiom}]{where}: {exc}", file=sys.stderr)
        return 1
    except (TreeError, LPError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
