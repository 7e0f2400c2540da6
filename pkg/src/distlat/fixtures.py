"""The fixture corpus and its expected-result tables.

Each fixture names a payload (a data file, inline text, a Dedekind order or a
pair of digraphs) and a list of expectations. An expectation names an operation
from ``OPS``, its arguments, the expected JSON-comparable value and where that
value comes from: ``stated`` (given in the literature), ``trivial`` (follows
from the definitions) or ``derived`` (computed by an independent brute-force
oracle and frozen here).
"""

from __future__ import annotations

import contextlib
import io as _io
import json
import warnings
from dataclasses import dataclass, field
from importlib.resources import files
from typing import Any, Callable

from . import birkhoff, dedekind, ext, factors, lattice, quiver
from .birkhoff import Digraph
from .errors import LatticeError
from .io import emit_dot, load_lattice, load_poset, load_quiver, load_rep

DATA = files("distlat") / "data"

STATED, TRIVIAL, DERIVED = "stated", "trivial", "derived"


@dataclass(frozen=True)
class Expected:
    op: str
    args: tuple
    value: Any
    provenance: str


@dataclass(frozen=True)
class Fixture:
    name: str
    kind: str
    source: Any
    expected: tuple[Expected, ...] = field(default_factory=tuple)


def E(op: str, *args, value=None, prov: str = TRIVIAL) -> Expected:
    return Expected(op, args, value, prov)


# payload loaders

def _load(fx: Fixture):
    kind, src = fx.kind, fx.source
    if kind == "lattice":
        return load_lattice(DATA / src)
    if kind == "lattice_error":
        return DATA / src
    if kind == "poset":
        return load_poset(DATA / src)
    if kind == "quiver":
        Q = load_quiver(DATA / src[0])
        return Q, load_rep(DATA / src[1], Q)
    if kind == "quiver_text":
        Q = quiver.parse_quiver(src[0])
        return Q, src[1]
    if kind == "annotated":
        data = json.loads((DATA / src).read_text())
        return load_lattice(DATA / src), data
    if kind in ("dedekind", "sweep", "cli"):
        return src
    if kind == "digraphs":
        return tuple(Digraph(tuple(vs), frozenset(es)) for vs, es in src)
    raise ValueError(f"unknown fixture kind {kind!r}")


# lattice operations (arguments and results use labels)

def _ids(L, *labels):
    return [L.index(x) for x in labels]


def _classes(L):
    fm = factors.factor_classes(L)
    return [[[L.names[iv.upper], L.names[iv.lower]] for iv in fm.members(c)]
            for c in range(fm.class_count)]


def _chains_between(L, lo, hi):
    out, path = [], [lo]

    def walk(x):
        if x == hi:
            out.append(list(path))
            return
        for y in L.upper_covers[x]:
            if L.leq(y, hi):
                path.append(y)
                walk(y)
                path.pop()

    walk(lo)
    return out


def _interval_factor_sets(L, x, y):
    fm = factors.factor_classes(L)
    X, Y = _ids(L, x, y)
    sets = {tuple(sorted({fm[(c[i + 1], c[i])] for i in range(len(c) - 1)}))
            for c in _chains_between(L, Y, X)}
    return sorted(map(list, sets))


def _describe(L):
    is_chain = all(len(c) <= 1 for c in L.upper_covers)
    return f"chain{L.n}" if is_chain else f"lattice{L.n}"


def _birkhoff_map(L):
    m = birkhoff.birkhoff_iso(L)
    return {L.names[a]: sorted(L.names[x] for x in s) for a, s in m.items()}


def _dot_counts(obj):
    text = emit_dot(obj)
    edges = sum(1 for line in text.splitlines() if "->" in line)
    ranks = [line for line in text.splitlines() if "rank=same" in line]
    nodes = obj.n
    out = {"nodes": nodes, "edges": edges}
    if ranks and hasattr(obj, "bottom"):
        out["bottom_first"] = f'"{obj.names[obj.bottom]}"' in ranks[0]
    return out


def _boolean_iso(P, k):
    return birkhoff.poset_iso(P, birkhoff.boolean_poset(k)) is not None


def _uniserial(payload):
    L, data = payload
    E_ = ext.ext_graph(L)
    ring = {tuple(e) for e in data["ring_ext"]}
    fm = factors.factor_classes(L)
    named = {fm[(L.index(hi), L.index(lo))]: name for name, (lo, hi) in data["factors"].items()}
    ext_edges = {(named[s], named[t]) for s, t in E_.graph.edges}
    return {
        "is_chain": all(len(c) <= 1 for c in L.upper_covers) and L.n == 3,
        "ext_edge_count": len(ext_edges),
        "ext_edge_between_classes": all(set(e) == set(named.values()) for e in ext_edges),
        "ring_both_directions": {(a, b) for a, b in ring} == {(b, a) for a, b in ring} and len(ring) == 2,
    }


def _reconstruct_sweep(max_n):
    from .generate import all_posets

    counter = 0
    for P in all_posets(max_n):
        J = birkhoff.downsets(P)
        for hyp in ("directed", "underlying"):
            if ext.reconstruct_check(J, hyp).status == ext.COUNTEREXAMPLE:
                counter += 1
    return counter


def _cover_edge_sweep(max_n):
    from .generate import all_posets

    return sum(not ext.lemma_cow_checks(birkhoff.downsets(P)).part_a
               or not ext.lemma_cow_checks(birkhoff.downsets(P)).part_b
               for P in all_posets(max_n))


def _cli(argv, key=None):
    from .cli import main

    buf = _io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(list(argv) + ["--json"])
    if key is None:
        return code
    data = json.loads(buf.getvalue())
    for part in key.split("."):
        data = data[part]
    return data


def _load_error(path):
    try:
        load_lattice(path)
    except LatticeError as exc:
        return type(exc).__name__
    return None


def _text_rep(payload, *_):
    Q, text = payload
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        M = quiver.parse_rep(text, Q)
    return {"support": sorted(M.support), "nonzero": sorted(M.nonzero),
            "warned": any(issubclass(w.category, quiver.RepairWarning) for w in caught)}


def _vertex_map(payload):
    Q, M = payload
    L = quiver.submodule_lattice(Q, M)
    return {str(k): v for k, v in quiver.class_vertex_map(L, M).items()}


OPS: dict[str, Callable] = {
    # lattice-core
    "size": lambda L: L.n,
    "meet": lambda L, a, b: L.names[L.meet[L.index(a)][L.index(b)]],
    "join": lambda L, a, b: L.names[L.join[L.index(a)][L.index(b)]],
    "is_modular": lattice.is_modular,
    "is_distributive": lattice.is_distributive,
    "maximal_chains": lambda L: [[L.names[x] for x in c] for c in lattice.maximal_chains(L)],
    "load_error": _load_error,
    # interval-factors
    "down_arrow": lambda L, u, v, x, y: factors.down_arrow(L, _ids(L, u, v), _ids(L, x, y)),
    "factor_classes": _classes,
    "is_multiplicity_free": factors.is_multiplicity_free,
    "interval_factor_count": lambda L, x, y: len(factors.interval_factors(L, *_ids(L, x, y))),
    "interval_factor_sets": _interval_factor_sets,
    # birkhoff
    "join_irreducibles": lambda L: list(birkhoff.join_irreducibles(L)[0].names),
    "ji_covers": lambda L: sorted(map(list, birkhoff.join_irreducibles(L)[0].cover_labels())),
    "ji_boolean": lambda L, k: _boolean_iso(birkhoff.join_irreducibles(L)[0], k),
    "birkhoff_iso": _birkhoff_map,
    "birkhoff_images": lambda L: len(set(birkhoff.birkhoff_iso(L).values())),
    "downsets_size": lambda P: birkhoff.downsets(P).n,
    "downsets_iso": lambda P, f: lattice.lattice_iso(birkhoff.downsets(P), load_lattice(DATA / f)) is not None,
    "cover_digraph": lambda P: {"vertices": birkhoff.cover_digraph(P).n,
                                "edges": [list(e) for e in birkhoff.cover_digraph(P).edge_labels()]},
    "ji_roundtrip": lambda P: birkhoff.poset_iso(birkhoff.join_irreducibles(birkhoff.downsets(P))[0], P) is not None,
    "decompose_downsets": lambda P: sorted(_describe(F) for F in ext.decompose(birkhoff.downsets(P))),
    # ext-graph
    "ext_edges": lambda L: [list(e) for e in ext.ext_graph(L).graph.edge_labels()],
    "ext_vertex_count": lambda L: ext.ext_graph(L).graph.n,
    "ext_iso_boolean": lambda L, k: birkhoff.digraph_iso(
        ext.ext_graph(L).graph, birkhoff.cover_digraph(birkhoff.boolean_poset(k))) is not None,
    "reconstruct": lambda L: ext.reconstruct_check(L).status,
    "cover_edges": lambda L: [ext.lemma_cow_checks(L).part_a, ext.lemma_cow_checks(L).part_b],
    "decompose": lambda L: sorted(_describe(F) for F in ext.decompose(L)),
    "hasse_dot": _dot_counts,
    "ext_dot": lambda L: _dot_counts(ext.ext_graph(L).graph),
    "uniserial_ext": _uniserial,
    # digraphs
    "iso_map": lambda G: birkhoff.digraph_iso(*G),
    "acyclic": lambda G: [ext.is_acyclic(G[0]), ext.underlying_graph_acyclic(G[0])],
    # quiver-rep
    "quiver": lambda QM: QM[0].to_json(),
    "rep": _text_rep,
    "submodules": lambda QM: list(quiver.submodule_lattice(*QM).names),
    "indecomposable": lambda QM: quiver.is_indecomposable(*QM),
    "ext_R": lambda QM: [list(e) for e in quiver.ext_R_induced(*QM).edge_labels()],
    "verify": lambda QM: quiver.verify_theorem_quiver(*QM).status,
    "class_vertex_map": _vertex_map,
    # dedekind
    "enumerate": lambda n: [str(f) for f in dedekind.enumerate_Dn(n)],
    "enumerate_size": lambda n: len(dedekind.enumerate_Dn(n)),
    "brute_force_size": lambda n: len(dedekind.brute_force_masks(n)),
    "count": lambda n: dedekind.count_Dn(n),
    "dedekind_shape": lambda n: _describe(dedekind.dedekind_lattice(n)),
    "dedekind_ji": lambda n: sorted(birkhoff.join_irreducibles(dedekind.dedekind_lattice(n))[0].names),
    "dedekind_verify": lambda n: [dedekind.verify_Dn_birkhoff(n).ok, dedekind.verify_Dn_birkhoff(n).downset_count],
    # sweeps and command line
    "reconstruct_sweep": _reconstruct_sweep,
    "cover_edge_sweep": _cover_edge_sweep,
    "cli_exit": lambda argv: _cli(argv),
    "cli_field": lambda argv, key: _cli(argv, key),
}


FIXTURES: tuple[Fixture, ...] = (
    Fixture("chain3", "lattice", "chain3.json", (
        E("size", value=3),
        E("meet", "a", "1", value="a"),
        E("join", "0", "a", value="a"),
        E("is_modular", value=True),
        E("maximal_chains", value=[["0", "a", "1"]]),
        E("down_arrow", "a", "0", "1", "a", value=False),
        E("factor_classes", value=[[["a", "0"]], [["1", "a"]]]),
        E("is_multiplicity_free", value=True),
        E("interval_factor_count", "1", "0", value=2),
        E("interval_factor_count", "a", "a", value=0),
        E("join_irreducibles", value=["a", "1"]),
        E("ji_covers", value=[["a", "1"]]),
        E("birkhoff_iso", value={"0": [], "a": ["a"], "1": ["1", "a"]}),
        E("ext_edges", value=[["1", "a"]], prov=DERIVED),
        E("reconstruct", value="holds_with_iso"),
        E("cover_edges", value=[True, True]),
        E("decompose", value=["chain3"]),
    )),
    Fixture("b2", "lattice", "b2.json", (
        E("size", value=4),
        E("meet", "a", "b", value="0"),
        E("join", "a", "b", value="1"),
        E("is_distributive", value=True),
        E("maximal_chains", value=[["0", "a", "1"], ["0", "b", "1"]]),
        E("down_arrow", "a", "0", "1", "b", value=True),
        E("down_arrow", "a", "0", "1", "a", value=False),
        E("factor_classes", value=[[["a", "0"], ["1", "b"]], [["b", "0"], ["1", "a"]]], prov=DERIVED),
        E("is_multiplicity_free", value=True, prov=DERIVED),
        E("interval_factor_sets", "1", "0", value=[[0, 1]], prov=DERIVED),
        E("join_irreducibles", value=["a", "b"]),
        E("ji_covers", value=[]),
        E("birkhoff_iso", value={"0": [], "a": ["a"], "b": ["b"], "1": ["a", "b"]}),
        E("ext_edges", value=[]),
        E("decompose", value=["chain2", "chain2"]),
        E("hasse_dot", value={"nodes": 4, "edges": 4, "bottom_first": True}),
    )),
    Fixture("m3", "lattice", "m3.json", (
        E("is_modular", value=True, prov=DERIVED),
        E("is_distributive", value=False, prov=STATED),
        E("maximal_chains", value=[["0", "m1", "1"], ["0", "m2", "1"], ["0", "m3", "1"]], prov=DERIVED),
        E("factor_classes", value=[[["m1", "0"], ["m2", "0"], ["m3", "0"],
                                    ["1", "m1"], ["1", "m2"], ["1", "m3"]]], prov=DERIVED),
        E("is_multiplicity_free", value=False, prov=DERIVED),
    )),
    Fixture("n5", "lattice", "n5.json", (
        E("is_modular", value=False, prov=DERIVED),
        E("is_distributive", value=False, prov=DERIVED),
    )),
    Fixture("bowtie", "lattice_error", "bowtie.json", (
        E("load_error", value="NotALattice"),
    )),
    Fixture("d2", "lattice", "d2.json", (
        E("join_irreducibles", value=["P1&P2", "P1", "P2", "1"], prov=STATED),
        E("ji_boolean", 2, value=True, prov=STATED),
        E("ext_vertex_count", value=4, prov=DERIVED),
        E("ext_edges", value=[["1", "P1"], ["1", "P2"], ["P1", "P1&P2"], ["P2", "P1&P2"]], prov=DERIVED),
        E("ext_iso_boolean", 2, value=True, prov=DERIVED),
        E("reconstruct", value="holds_with_iso", prov=DERIVED),
        E("cover_edges", value=[True, True], prov=DERIVED),
        E("ext_dot", value={"nodes": 4, "edges": 4}, prov=DERIVED),
        E("birkhoff_images", value=6, prov=DERIVED),
    )),
    Fixture("d3", "lattice", "d3.json", (
        E("size", value=20, prov=DERIVED),
        E("is_distributive", value=True, prov=DERIVED),
        E("is_multiplicity_free", value=True, prov=DERIVED),
        E("ji_boolean", 3, value=True, prov=STATED),
    )),
    Fixture("b3", "lattice", "b3.json", (
        E("is_distributive", value=True),
        E("decompose", value=["chain2", "chain2", "chain2"]),
    )),
    Fixture("uniserial3", "annotated", "uniserial3.json", (
        E("uniserial_ext", value={"is_chain": True, "ext_edge_count": 1,
                             "ext_edge_between_classes": True, "ring_both_directions": True}, prov=STATED),
    )),
    Fixture("antichain2", "poset", "antichain2.poset.json", (
        E("downsets_size", value=4),
        E("downsets_iso", "b2.json", value=True),
        E("cover_digraph", value={"vertices": 2, "edges": []}),
    )),
    Fixture("chain2", "poset", "chain2.poset.json", (
        E("downsets_size", value=3),
        E("downsets_iso", "chain3.json", value=True),
        E("cover_digraph", value={"vertices": 2, "edges": [["b", "a"]]}),
        E("hasse_dot", value={"nodes": 2, "edges": 1}),
    )),
    Fixture("boolean2", "poset", "boolean2.poset.json", (
        E("downsets_size", value=6, prov=DERIVED),
        E("downsets_iso", "d2.json", value=True, prov=DERIVED),
        E("cover_digraph", value={"vertices": 4, "edges": [["{1,2}", "{1}"], ["{1,2}", "{2}"],
                                                           ["{1}", "{}"], ["{2}", "{}"]]}, prov=DERIVED),
        E("ji_roundtrip", value=True, prov=DERIVED),
    )),
    Fixture("chain_plus_point", "poset", "chain_plus_point.poset.json", (
        E("decompose_downsets", value=["chain2", "chain3"], prov=DERIVED),
    )),
    Fixture("single_edge", "digraphs", ((("x", "y"), {(0, 1)}), (("x", "y"), {(0, 1)})), (
        E("iso_map", value={0: 0, 1: 1}),
        E("acyclic", value=[True, True]),
    )),
    Fixture("two_cycle", "digraphs", ((("x", "y"), {(0, 1), (1, 0)}), (("x", "y"), {(0, 1)})), (
        E("iso_map", value=None),
        E("acyclic", value=[False, False]),
    )),
    Fixture("diamond_digraph", "digraphs", ((("a", "b", "c", "d"), {(0, 1), (0, 2), (1, 3), (2, 3)}),), (
        E("acyclic", value=[True, False]),
    )),
    Fixture("a2_nonzero", "quiver", ("a2.quiver", "a2_nonzero.rep"), (
        E("quiver", value={"vertices": ["1", "2"], "arrows": [["a", "1", "2"]]}),
        E("submodules", value=["{}", "{2}", "{1,2}"], prov=DERIVED),
        E("indecomposable", value=True),
        E("ext_R", value=[["1", "2"]]),
        E("verify", value="equal", prov=DERIVED),
        E("class_vertex_map", value={"0": "2", "1": "1"}),
    )),
    Fixture("a2_zero", "quiver", ("a2.quiver", "a2_zero.rep"), (
        E("submodules", value=["{}", "{1}", "{2}", "{1,2}"]),
        E("indecomposable", value=False),
        E("class_vertex_map", value={"0": "1", "1": "2"}),
    )),
    Fixture("a3_path", "quiver", ("a3.quiver", "a3_path.rep"), (
        E("submodules", value=["{}", "{3}", "{2,3}", "{1,2,3}"], prov=DERIVED),
        E("verify", value="equal", prov=DERIVED),
        E("class_vertex_map", value={"0": "3", "1": "2", "2": "1"}, prov=DERIVED),
    )),
    Fixture("a3_split", "quiver", ("a3.quiver", "a3_split.rep"), (
        E("indecomposable", value=False, prov=DERIVED),
    )),
    Fixture("a3_support13", "quiver", ("a3.quiver", "a3_support13.rep"), (
        E("ext_R", value=[]),
    )),
    Fixture("kronecker", "quiver", ("kronecker.quiver", "kronecker_full.rep"), (
        E("ext_R", value=[["1", "2"]]),
    )),
    Fixture("star", "quiver", ("star.quiver", "star_full.rep"), (
        E("verify", value="equal", prov=DERIVED),
    )),
    Fixture("a2_text", "quiver_text", ("vertices 1 2; arrow a 1 2", "support 1 2; nonzero a"), (
        E("quiver", value={"vertices": ["1", "2"], "arrows": [["a", "1", "2"]]}),
        E("rep", value={"support": ["1", "2"], "nonzero": ["a"], "warned": False}),
    )),
    Fixture("a2_repair", "quiver_text", ("vertices 1 2; arrow a 1 2", "support 2; nonzero a"), (
        E("rep", value={"support": ["2"], "nonzero": [], "warned": True}),
    )),
    Fixture("dedekind0", "dedekind", 0, (
        E("enumerate", value=["0", "1"], prov=DERIVED),
        E("count", value=2, prov=DERIVED),
        E("dedekind_verify", value=[True, 2]),
    )),
    Fixture("dedekind1", "dedekind", 1, (
        E("enumerate", value=["0", "{1}", "1"], prov=DERIVED),
        E("dedekind_shape", value="chain3", prov=DERIVED),
    )),
    Fixture("dedekind2", "dedekind", 2, (
        E("enumerate", value=["0", "{1,2}", "{1}", "{2}", "{1}|{2}", "1"], prov=DERIVED),
        E("count", value=6, prov=DERIVED),
        E("dedekind_shape", value="lattice6", prov=DERIVED),
        E("dedekind_ji", value=sorted(["1", "{1}", "{2}", "{1,2}"]), prov=STATED),
        E("dedekind_verify", value=[True, 6], prov=STATED),
    )),
    Fixture("dedekind3", "dedekind", 3, (
        E("dedekind_verify", value=[True, 20], prov=DERIVED),
    )),
    Fixture("dedekind4", "dedekind", 4, (
        E("count", value=168, prov=DERIVED),
        E("brute_force_size", value=168, prov=DERIVED),
    )),
    Fixture("dedekind6", "dedekind", 6, (
        E("count", value=7828354, prov=DERIVED),
    )),
    Fixture("sweeps", "sweep", 5, (
        E("reconstruct_sweep", value=0, prov=DERIVED),
        E("cover_edge_sweep", value=0, prov=DERIVED),
    )),
    Fixture("cli_check_m3", "cli", ("lattice", "check", str(DATA / "m3.json")), (
        E("cli_field", "modular", value=True, prov=STATED),
        E("cli_field", "distributive", value=False, prov=STATED),
        E("cli_field", "multiplicity_free", value=False, prov=STATED),
    )),
    Fixture("cli_count2", "cli", ("dedekind", "count", "2"), (
        E("cli_field", "count", value=6, prov=DERIVED),
    )),
    Fixture("cli_reconstruct_d2", "cli", ("lattice", "reconstruct", str(DATA / "d2.json")), (
        E("cli_exit", value=0, prov=DERIVED),
        E("cli_field", "status", value="holds_with_iso", prov=DERIVED),
    )),
)


@dataclass
class Outcome:
    fixture: str
    op: str
    args: tuple
    provenance: str
    expected: Any
    actual: Any
    ok: bool


def _normalise(value):
    return json.loads(json.dumps(value, default=list))


def run_fixtures(selected: list[str] | None = None) -> list[Outcome]:
    outcomes = []
    for fx in FIXTURES:
        if selected and fx.name not in selected:
            continue
        payload = _load(fx)
        for ex in fx.expected:
            try:
                actual = OPS[ex.op](payload, *ex.args)
            except LatticeError as exc:
                actual = f"error: {type(exc).__name__}: {exc}"
            ok = _normalise(actual) == _normalise(ex.value)
            outcomes.append(Outcome(fx.name, ex.op, ex.args, ex.provenance, ex.value, actual, ok))
    return outcomes
