"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 a theorem hypothesis is not met,
3 a theorem or property is violated.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import birkhoff, dedekind, ext, factors, lattice, quiver
from .errors import (IsoFailure, LabelConflict, LatticeError, NotDistributive, NotIndecomposable,
                     NotModular, NotMultiplicityFree, ParseError, QuiverNotAcyclic)
from .io import FORMAT_VERSION, emit_dot, format_json, load_lattice, load_poset, load_quiver, load_rep, order_to_json

OK, USAGE, HYPOTHESIS, VIOLATION = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _emit(args, data: dict, text: str) -> None:
    if args.json:
        print(format_json({"format": FORMAT_VERSION, **data}), end="")
    else:
        print(text)


def _class_edges(L) -> dict[tuple[int, int], int]:
    fm = factors.factor_classes(L)
    return {(iv.lower, iv.upper): fm.class_of[iv] for iv in fm.intervals}


# lattice subcommands

def cmd_check(args) -> int:
    L = load_lattice(args.file)
    modular = lattice.is_modular(L)
    data = {"size": L.n, "modular": modular, "distributive": lattice.is_distributive(L),
            "multiplicity_free": factors.is_multiplicity_free(L) if modular else False}
    if args.dot:
        print(emit_dot(L), end="")
    else:
        _emit(args, data, "\n".join(f"{k}={str(v).lower()}" for k, v in data.items()))
    return OK


def cmd_factors(args) -> int:
    L = load_lattice(args.file)
    if args.dot:
        print(emit_dot(L, _class_edges(L)), end="")
        return OK
    fm = factors.factor_classes(L)
    classes = [[[L.names[iv.lower], L.names[iv.upper]] for iv in fm.members(c)]
               for c in range(fm.class_count)]
    data = {"class_count": fm.class_count, "classes": classes,
            "multiplicity_free": factors.is_multiplicity_free(L)}
    lines = [f"class {c}: " + " ".join(f"[{lo},{hi}]" for lo, hi in members)
             for c, members in enumerate(classes)]
    _emit(args, data, "\n".join(lines + [f"multiplicity_free={str(data['multiplicity_free']).lower()}"]))
    return OK


def cmd_birkhoff(args) -> int:
    L = load_lattice(args.file)
    P, _ = birkhoff.join_irreducibles(L)
    witness = {L.names[a]: sorted(L.names[x] for x in s) for a, s in birkhoff.birkhoff_iso(L).items()}
    if args.dot:
        print(emit_dot(P), end="")
        return OK
    data = {"poset": order_to_json(P), "witness": witness}
    lines = ["join irreducibles: " + " ".join(P.names),
             "covers: " + " ".join(f"{lo}<{hi}" for lo, hi in P.cover_labels())]
    lines += [f"{a} -> {{{','.join(v)}}}" for a, v in witness.items()]
    _emit(args, data, "\n".join(lines))
    return OK


def cmd_downsets(args) -> int:
    J = birkhoff.downsets(load_poset(args.file))
    if args.dot:
        print(emit_dot(J), end="")
    else:
        print(format_json({"format": FORMAT_VERSION, **order_to_json(J)}), end="")
    return OK


def cmd_ext(args) -> int:
    E = ext.ext_graph(load_lattice(args.file))
    if args.dot:
        print(emit_dot(E.graph, name="Ext"), end="")
        return OK
    data = {"vertices": list(E.graph.vertices), "edges": [list(e) for e in E.graph.edge_labels()],
            "acyclic": ext.is_acyclic(E.graph), "underlying_acyclic": ext.underlying_graph_acyclic(E.graph)}
    lines = ["vertices: " + " ".join(E.graph.vertices)] + [f"{s} -> {t}" for s, t in data["edges"]]
    _emit(args, data, "\n".join(lines))
    return OK


def cmd_reconstruct(args) -> int:
    v = ext.reconstruct_check(load_lattice(args.file), args.hypothesis)
    data = v.to_dict()
    lines = [f"status: {v.status}", f"hypothesis: {v.hypothesis}",
             f"directed_acyclic={str(v.directed_acyclic).lower()}",
             f"underlying_acyclic={str(v.underlying_acyclic).lower()}"]
    if v.witness is not None:
        lines += [f"{k} -> {val}" for k, val in data["witness"].items()]
    if v.status == ext.HYPOTHESIS_FAILS:
        lines += ["ext graph: " + ", ".join(f"{s}->{t}" for s, t in v.ext.edge_labels()),
                  "cover digraph: " + ", ".join(f"{s}->{t}" for s, t in v.poset_digraph.edge_labels())]
    _emit(args, data, "\n".join(lines))
    return {ext.HOLDS: OK, ext.HYPOTHESIS_FAILS: HYPOTHESIS}.get(v.status, VIOLATION)


def cmd_decompose(args) -> int:
    parts = ext.decompose(load_lattice(args.file))
    data = {"factors": [order_to_json(F) for F in parts]}
    lines = [f"factor {i}: {F.n} elements, covers "
             + " ".join(f"{lo}<{hi}" for lo, hi in F.cover_labels()) for i, F in enumerate(parts)]
    _emit(args, data, "\n".join(lines))
    return OK


# quiver subcommands

def _load_qm(args):
    Q = load_quiver(args.quiver)
    return Q, load_rep(args.rep, Q)


def cmd_submodules(args) -> int:
    Q, M = _load_qm(args)
    L = quiver.submodule_lattice(Q, M)
    if args.dot:
        print(emit_dot(L), end="")
        return OK
    data = {"indecomposable": quiver.is_indecomposable(Q, M), **order_to_json(L)}
    _emit(args, data, "\n".join(L.names))
    return OK


def cmd_verify(args) -> int:
    Q, M = _load_qm(args)
    try:
        v = quiver.verify_theorem_quiver(Q, M)
    except (QuiverNotAcyclic, NotIndecomposable) as exc:
        _emit(args, {"status": "hypothesis_fails", "reason": str(exc)}, f"hypothesis_fails: {exc}")
        return HYPOTHESIS
    _emit(args, v.to_dict(), "\n".join(f"{k}: {val}" for k, val in v.to_dict().items()))
    if v.status == "equal":
        return OK
    return VIOLATION if v.tree else HYPOTHESIS


# dedekind subcommands

def cmd_count(args) -> int:
    c = dedekind.count_Dn(args.n, workers=args.workers)
    _emit(args, {"n": args.n, "count": c}, str(c))
    return OK


def cmd_dlattice(args) -> int:
    L = dedekind.dedekind_lattice(args.n)
    if args.dot:
        print(emit_dot(L), end="")
    elif args.json:
        print(format_json({"format": FORMAT_VERSION, **order_to_json(L)}), end="")
    else:
        print("\n".join(L.names))
    return OK


def cmd_dverify(args) -> int:
    v = dedekind.verify_Dn_birkhoff(args.n)
    _emit(args, v.to_dict(), f"ok={str(v.ok).lower()} size={v.size} downsets={v.downset_count}"
          + (f"\n{v.problem}" if v.problem else ""))
    return OK if v.ok else VIOLATION


def cmd_fixtures(args) -> int:
    from .fixtures import run_fixtures

    outcomes = run_fixtures(args.only or None)
    failed = [o for o in outcomes if not o.ok]
    if args.json:
        rows = [{"fixture": o.fixture, "op": o.op, "args": list(map(str, o.args)),
                 "provenance": o.provenance, "ok": o.ok} for o in outcomes]
        print(format_json({"format": FORMAT_VERSION, "passed": len(outcomes) - len(failed),
                           "failed": len(failed), "results": rows}), end="")
    else:
        for o in outcomes:
            arg = ",".join(map(str, o.args))
            print(f"{'PASS' if o.ok else 'FAIL'} {o.fixture}.{o.op}({arg}) [{o.provenance}]")
            if not o.ok:
                print(f"    expected {json.dumps(o.expected, default=list)}")
                print(f"    actual   {json.dumps(o.actual, default=list)}")
        print(f"{len(outcomes) - len(failed)} passed, {len(failed)} failed")
    return VIOLATION if failed else OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="distlat", description="Finite lattice workbench.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    dot = argparse.ArgumentParser(add_help=False)
    dot.add_argument("--dot", action="store_true", help="Graphviz output")
    top = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    lat = top.add_parser("lattice", help="operations on a lattice file").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    for name, fn, extra in [("check", cmd_check, [dot]), ("factors", cmd_factors, [dot]),
                            ("birkhoff", cmd_birkhoff, [dot]), ("downsets", cmd_downsets, [dot]),
                            ("ext", cmd_ext, [dot]), ("reconstruct", cmd_reconstruct, []),
                            ("decompose", cmd_decompose, [])]:
        sp = lat.add_parser(name, parents=[common, *extra])
        sp.add_argument("file")
        sp.set_defaults(func=fn)
        if name == "reconstruct":
            sp.add_argument("--hypothesis", choices=["directed", "underlying"], default="directed")

    q = top.add_parser("quiver", help="thin quiver representations").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    for name, fn, extra in [("submodules", cmd_submodules, [dot]), ("verify", cmd_verify, [])]:
        sp = q.add_parser(name, parents=[common, *extra])
        sp.add_argument("quiver")
        sp.add_argument("rep")
        sp.set_defaults(func=fn)

    d = top.add_parser("dedekind", help="Dedekind lattices D_n").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    sp = d.add_parser("count", parents=[common])
    sp.add_argument("n", type=int)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_count)
    sp = d.add_parser("lattice", parents=[common, dot])
    sp.add_argument("n", type=int)
    sp.set_defaults(func=cmd_dlattice)
    sp = d.add_parser("verify", parents=[common])
    sp.add_argument("n", type=int)
    sp.set_defaults(func=cmd_dverify)

    f = top.add_parser("fixtures", help="the built-in fixture corpus").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    sp = f.add_parser("run", parents=[common])
    sp.add_argument("only", nargs="*", help="fixture names (default: all)")
    sp.set_defaults(func=cmd_fixtures)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not hasattr(args, "dot"):
        args.dot = False
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return USAGE
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except LatticeError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        if isinstance(exc, (IsoFailure, LabelConflict)):
            return VIOLATION
        if isinstance(exc, (NotModular, NotDistributive, NotMultiplicityFree)):
            return HYPOTHESIS
        return USAGE


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
