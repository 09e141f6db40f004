"""Command-line front end.

Subcommands mirror the library: ``cat`` for finite categories, ``set`` for
functions, ``opengraph`` for open graphs, ``states`` for the state-functor
contexts.  Output is deterministic (everything sorted), exit code 0 on
success, 1 on a domain error (the structured error name is printed), 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fincat, homotopy, opengraph, order, setcat, states
from .errors import CapExceeded, EngineError, ParseError


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _caps(args) -> fincat.SizeCaps:
    if getattr(args, "cap_objects", None):
        return fincat.SizeCaps(objects=args.cap_objects)
    return fincat.DEFAULT_CAPS


def _emit_report(report: homotopy.ObstructionReport, fmt: str, out) -> None:
    if fmt == "interchange":
        out.write(json.dumps(homotopy.report_to_dict(report), sort_keys=True, indent=2) + "\n")
        return
    if fmt == "dot":
        out.write(order.hasse_dot(report.invariant))
        return
    p = report.invariant.poset
    covers = order.hasse(p)
    out.write(f"context: {report.context}\n")
    out.write(f"trivial: {'yes' if report.trivial else 'no'}\n")
    out.write(f"basepoint: {report.invariant.basepoint}\n")
    out.write(f"elements ({len(p.elements)}): " + ", ".join(sorted(p.elements)) + "\n")
    out.write(f"minimal obstructions ({len(report.minimal)}): " + ", ".join(sorted(report.minimal)) + "\n")
    out.write(f"covers ({len(covers)}): " + "; ".join(f"{a} < {b}" for a, b in covers) + "\n")


# -- cat ---------------------------------------------------------------------


def _cmd_cat_validate(args, out):
    c = fincat.parse_category(_read(args.file))
    out.write(f"ok: {len(c.objects)} objects, {len(c.morphisms)} morphisms\n")
    return 0


def _cmd_cat_pi(args, out, i: int):
    c = fincat.parse_category(_read(args.file))
    if i == 0:
        report = homotopy.pi0(c, args.object)
    else:
        report = homotopy.pi1(c, args.object, _caps(args))
    _emit_report(report, args.format, out)
    return 0


def _cmd_cat_analyze(args, out):
    c = fincat.parse_category(_read(args.file))
    analysis = homotopy.analyze_morphism(c, args.morphism, _caps(args))
    out.write(f"morphism: {args.morphism}\n")
    out.write(f"split-epi: {'yes' if analysis.split_epi else 'no'}\n")
    out.write(f"mono: {'yes' if analysis.mono else 'no'}\n")
    out.write(f"iso: {'yes' if analysis.iso else 'no'}\n")
    _emit_report(analysis.pi0, args.format, out)
    _emit_report(analysis.pi1, args.format, out)
    return 0


def _cmd_cat_check_terminal(args, out):
    c = fincat.parse_category(_read(args.file))
    out.write(f"weak-terminal: {'yes' if homotopy.is_weak_terminal(c, args.object) else 'no'}\n")
    out.write(f"subterminal: {'yes' if homotopy.is_subterminal(c, args.object) else 'no'}\n")
    out.write(f"terminal: {'yes' if homotopy.is_terminal(c, args.object) else 'no'}\n")
    return 0


# -- set ---------------------------------------------------------------------


def _cmd_set_pi(args, out, i: int):
    name, f = setcat.parse_function(_read(args.fn))
    cap = 10  # explicit-materialisation bound for the CLI
    report = setcat.pi0_function(f, cap) if i == 0 else setcat.pi1_function(f, cap)
    out.write(f"function: {name}\n")
    _emit_report(report, args.format, out)
    return 0


# -- opengraph ------------------------------------------------------------------


def _cmd_og_compose(args, out):
    g = opengraph.parse_open_graph(_read(args.left))
    h = opengraph.parse_open_graph(_read(args.right))
    gh = opengraph.compose(g, h)
    if args.format == "dot":
        out.write(opengraph.open_graph_dot(gh))
    else:
        out.write(opengraph.serialize_open_graph(gh))
    return 0


def _cmd_og_reach(args, out):
    g = opengraph.parse_open_graph(_read(args.graph))
    if args.format == "dot":
        out.write(opengraph.open_graph_dot(g))
        return 0
    out.write("reach: " + opengraph.relation_text(opengraph.reach(g)) + "\n")
    return 0


def _cmd_og_obstruct(args, out):
    g = opengraph.parse_open_graph(_read(args.left))
    h = opengraph.parse_open_graph(_read(args.right))
    carrier = len(g.inputs) * len(h.outputs)
    if carrier > opengraph.DEFAULT_PAIR_CAP:
        raise CapExceeded(
            f"boundary carrier has {carrier} pairs, cap {opengraph.DEFAULT_PAIR_CAP}"
        )
    out.write("reach left: " + opengraph.relation_text(opengraph.reach(g)) + "\n")
    out.write("reach right: " + opengraph.relation_text(opengraph.reach(h)) + "\n")
    composed = opengraph.compose_rel(opengraph.reach(g), opengraph.reach(h))
    out.write("composite of parts: " + opengraph.relation_text(composed) + "\n")
    whole = opengraph.reach(opengraph.compose(g, h))
    out.write("reach of composite: " + opengraph.relation_text(whole) + "\n")
    _emit_report(opengraph.laxator_obstructions(g, h), args.format, out)
    pi1 = opengraph.pi1_laxator(g, h)
    out.write(f"pi1 trivial: {'yes' if pi1.trivial else 'no'}\n")
    return 0


def _cmd_og_act(args, out):
    g = opengraph.parse_open_graph(_read(args.source))
    g2 = opengraph.parse_open_graph(_read(args.target))
    hom = opengraph.parse_graph_hom(_read(args.hom), g, g2)
    h = opengraph.parse_open_graph(_read(args.right))
    acted, pmap = opengraph.act(hom, h)
    out.write("reach of acted graph: " + opengraph.relation_text(opengraph.reach(acted)) + "\n")
    bp = pmap.target.basepoint
    moved = sorted(e for e in pmap.mapping if e != pmap.source.basepoint)
    out.write(f"obstruction flow ({len(moved)}):\n")
    for e in moved:
        out.write(f"  {e} -> {pmap.mapping[e]}\n")
    trivialised = sum(1 for e in moved if pmap.mapping[e] == bp)
    out.write(f"trivialised: {trivialised} of {len(moved)}\n")
    return 0


# -- states -----------------------------------------------------------------------


def _parse_sets(text: str) -> tuple[tuple[str, ...], tuple[str, ...]]:
    try:
        left, right = text.split("|", 1)
    except ValueError:
        raise ParseError("--sets wants 'a,b|c,d'")
    a = tuple(x.strip() for x in left.split(",") if x.strip())
    b = tuple(x.strip() for x in right.split(",") if x.strip())
    return a, b


def _parse_dims(text: str) -> tuple[int, int]:
    try:
        m, n = text.split(",", 1)
        return int(m), int(n)
    except ValueError:
        raise ParseError("--dims wants 'm,n'")


def _parse_matrix(text: str) -> tuple:
    rows = []
    for row in text.split(","):
        row = row.strip()
        if not all(ch in "01" for ch in row):
            raise ParseError(f"matrix row {row!r} must be bits")
        rows.append(tuple(int(ch) for ch in row))
    return tuple(rows)


def _parse_map(text: str, dom, cod) -> setcat.FiniteFunction:
    mapping = {}
    for part in text.split(","):
        if "=>" not in part:
            raise ParseError(f"bad assignment {part!r}")
        x, y = part.split("=>", 1)
        mapping[x.strip()] = y.strip()
    return setcat.FiniteFunction(dom, cod, mapping)


def _states_objects(args):
    if args.context == "cartesian":
        if not args.sets:
            raise ParseError("cartesian context needs --sets")
        return states.StateContext("cartesian"), *_parse_sets(args.sets)
    if not args.dims:
        raise ParseError("gf2 context needs --dims")
    return states.StateContext("gf2"), *_parse_dims(args.dims)


def _cmd_states_obstruct(args, out):
    ctx, a, b = _states_objects(args)
    p0, p1 = states.obstructions(ctx, a, b)
    sep = states.separable_states(ctx, a, b)
    total = len(states.laxator(ctx, a, b).cod_set)
    out.write(f"states of tensor: {total}\n")
    out.write(f"separable: {len(sep)}\n")
    _emit_report(p0, args.format, out)
    _emit_report(p1, args.format, out)
    return 0


def _cmd_states_local_act(args, out):
    ctx, a, b = _states_objects(args)
    if ctx.kind == "cartesian":
        if not (args.target_sets and args.fmap and args.gmap):
            raise ParseError("cartesian local action needs --target-sets, --fmap, --gmap")
        a2, b2 = _parse_sets(args.target_sets)
        f = _parse_map(args.fmap, a, a2)
        g = _parse_map(args.gmap, b, b2)
    else:
        if not (args.fmat and args.gmat):
            raise ParseError("gf2 local action needs --fmat and --gmat")
        f = _parse_matrix(args.fmat)
        g = _parse_matrix(args.gmat)
    pmap = states.local_action(ctx, f, g)
    bp = pmap.target.basepoint
    moved = sorted(e for e in pmap.mapping if e != pmap.source.basepoint)
    out.write(f"obstruction flow ({len(moved)}):\n")
    for e in moved:
        out.write(f"  {e} -> {pmap.mapping[e]}\n")
    trivialised = sum(1 for e in moved if pmap.mapping[e] == bp)
    out.write(f"trivialised: {trivialised} of {len(moved)}\n")
    out.write("basepoint preserved: yes\n")
    return 0


# -- wiring ------------------------------------------------------------------------


def _add_format(p, choices=("text", "dot", "interchange")):
    p.add_argument("--format", choices=choices, default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="obstructia", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    cat = sub.add_parser("cat", help="finite category computations")
    cat_sub = cat.add_subparsers(dest="subcommand", required=True)

    p = cat_sub.add_parser("validate")
    p.add_argument("file")
    p.set_defaults(func=_cmd_cat_validate)

    for name, i in (("pi0", 0), ("pi1", 1)):
        p = cat_sub.add_parser(name)
        p.add_argument("file")
        p.add_argument("--object", required=True)
        p.add_argument("--cap-objects", type=int)
        _add_format(p)
        p.set_defaults(func=lambda a, o, i=i: _cmd_cat_pi(a, o, i))

    p = cat_sub.add_parser("analyze")
    p.add_argument("file")
    p.add_argument("--morphism", required=True)
    p.add_argument("--cap-objects", type=int)
    _add_format(p)
    p.set_defaults(func=_cmd_cat_analyze)

    p = cat_sub.add_parser("check-terminal")
    p.add_argument("file")
    p.add_argument("--object", required=True)
    p.set_defaults(func=_cmd_cat_check_terminal)

    st = sub.add_parser("set", help="finite function fast paths")
    st_sub = st.add_subparsers(dest="subcommand", required=True)
    for name, i in (("pi0", 0), ("pi1", 1)):
        p = st_sub.add_parser(name)
        p.add_argument("--fn", required=True)
        _add_format(p)
        p.set_defaults(func=lambda a, o, i=i: _cmd_set_pi(a, o, i))

    og = sub.add_parser("opengraph", help="open graphs and the reachability laxator")
    og_sub = og.add_subparsers(dest="subcommand", required=True)

    p = og_sub.add_parser("compose")
    p.add_argument("left")
    p.add_argument("right")
    _add_format(p, ("text", "dot"))
    p.set_defaults(func=_cmd_og_compose)

    p = og_sub.add_parser("reach")
    p.add_argument("graph")
    _add_format(p, ("text", "dot"))
    p.set_defaults(func=_cmd_og_reach)

    p = og_sub.add_parser("obstruct")
    p.add_argument("left")
    p.add_argument("right")
    _add_format(p)
    p.set_defaults(func=_cmd_og_obstruct)

    p = og_sub.add_parser("act")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("hom")
    p.add_argument("right")
    p.set_defaults(func=_cmd_og_act)

    stt = sub.add_parser("states", help="state-functor laxators")
    stt_sub = stt.add_subparsers(dest="subcommand", required=True)

    p = stt_sub.add_parser("obstruct")
    p.add_argument("--context", choices=("cartesian", "gf2"), required=True)
    p.add_argument("--sets")
    p.add_argument("--dims")
    _add_format(p)
    p.set_defaults(func=_cmd_states_obstruct)

    p = stt_sub.add_parser("local-act")
    p.add_argument("--context", choices=("cartesian", "gf2"), required=True)
    p.add_argument("--sets")
    p.add_argument("--dims")
    p.add_argument("--target-sets")
    p.add_argument("--fmap")
    p.add_argument("--gmap")
    p.add_argument("--fmat")
    p.add_argument("--gmat")
    p.set_defaults(func=_cmd_states_local_act)

    return parser


def run(argv, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args, out)
    except EngineError as exc:
        sys.stderr.write(f"error {type(exc).__name__}: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"error IO: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
