"""Ext graphs of multiplicity-free distributive lattices.

There is an edge ``x -> y`` between factor classes when some height-two
interval ``[u, w]`` has exactly one element ``v`` strictly inside, with
``[u, v]`` in class ``x`` and ``[v, w]`` in class ``y``.
"""

from __future__ import annotations

import graphlib
from dataclasses import dataclass, field

from .birkhoff import Digraph, Poset, cover_digraph, digraph_iso, downsets, join_irreducibles
from .errors import IsoFailure, NotModular, NotMultiplicityFree
from .factors import CoverInterval, FactorMap, UnionFind, factor_classes, is_multiplicity_free
from .lattice import Lattice, bits, product

HOLDS = "holds_with_iso"
HYPOTHESIS_FAILS = "hypothesis_fails"
COUNTEREXAMPLE = "counterexample"


@dataclass(frozen=True)
class ExtGraph:
    """Digraph on factor class ids plus one uniserial witness ``(u, v, w)`` per edge."""

    graph: Digraph
    factors: FactorMap
    witnesses: dict[tuple[int, int], tuple[int, int, int]]
    top_of: dict[int, int]  # class id -> join irreducible with that top


def _require_mf(L: Lattice) -> None:
    try:
        ok = L.memo("is_multiplicity_free", lambda: is_multiplicity_free(L))
    except NotModular:
        ok = False
    if not ok:
        raise NotMultiplicityFree("lattice is not modular and multiplicity free")


def ext_graph(L: Lattice) -> ExtGraph:
    _require_mf(L)
    return L.memo("ext_graph", lambda: _ext_graph(L))


def _ext_graph(L: Lattice) -> ExtGraph:
    fm = factor_classes(L)
    _, info = join_irreducibles(L)
    top_of = {cls: x for x, (_, cls) in info.items()}
    labels = tuple(L.names[top_of[c]] for c in range(fm.class_count))
    witnesses: dict[tuple[int, int], tuple[int, int, int]] = {}
    for w, v in ((lo, hi) for lo, hi in L.covers):
        for u in L.upper_covers[v]:
            if L.height[u] - L.height[w] != 2 or L.between(w, u) != 1 << v:
                continue
            edge = (fm.class_of[CoverInterval(u, v)], fm.class_of[CoverInterval(v, w)])
            witnesses.setdefault(edge, (u, v, w))
    graph = Digraph(labels, frozenset(witnesses))
    return ExtGraph(graph, fm, dict(sorted(witnesses.items())), top_of)


def is_acyclic(G: Digraph) -> bool:
    """No directed cycle."""
    preds = {v: set() for v in range(G.n)}
    for s, t in G.edges:
        preds[t].add(s)
    try:
        tuple(graphlib.TopologicalSorter(preds).static_order())
    except graphlib.CycleError:
        return False
    return True


def underlying_graph_acyclic(G: Digraph) -> bool:
    """The underlying undirected multigraph is a forest; opposite edges count twice."""
    uf = UnionFind(G.n)
    for s, t in sorted(G.edges):
        if uf.find(s) == uf.find(t):
            return False
        uf.union(s, t)
    return True


def _components(G: Digraph) -> list[list[int]]:
    uf = UnionFind(G.n)
    for s, t in G.edges:
        uf.union(s, t)
    groups: dict[int, list[int]] = {}
    for v in range(G.n):
        groups.setdefault(uf.find(v), []).append(v)
    return list(groups.values())


@dataclass
class Verdict:
    status: str
    hypothesis: str
    directed_acyclic: bool
    underlying_acyclic: bool
    iso_holds: bool
    witness: dict[int, int] | None
    ext: Digraph
    poset_digraph: Digraph
    canonical: dict[int, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        def named(m):
            if m is None:
                return None
            return {self.ext.vertices[k]: self.poset_digraph.vertices[v] for k, v in m.items()}

        return {
            "status": self.status,
            "hypothesis": self.hypothesis,
            "directed_acyclic": self.directed_acyclic,
            "underlying_acyclic": self.underlying_acyclic,
            "iso_holds": self.iso_holds,
            "witness": named(self.witness),
            "ext_edges": [list(e) for e in self.ext.edge_labels()],
            "poset_edges": [list(e) for e in self.poset_digraph.edge_labels()],
        }


def reconstruct_check(L: Lattice, hypothesis: str = "directed") -> Verdict:
    """Compare the Ext graph with the Hasse digraph of the join irreducibles.

    ``hypothesis`` picks the acyclicity reading: ``"directed"`` (no directed
    cycle) or ``"underlying"`` (the underlying graph is a forest). Both flags
    are always reported. Under a satisfied hypothesis the witness is the
    canonical map class ``x`` -> join irreducible with top ``x``.
    """
    if hypothesis not in ("directed", "underlying"):
        raise ValueError(f"unknown hypothesis {hypothesis!r}")
    E = ext_graph(L)
    P, _ = join_irreducibles(L)
    C = cover_digraph(P)
    pos = {x: i for i, x in enumerate(P.payload)}
    canonical = {cls: pos[x] for cls, x in E.top_of.items()}
    canonical_ok = {(canonical[s], canonical[t]) for s, t in E.graph.edges} == set(C.edges)
    witness = canonical if canonical_ok else digraph_iso(E.graph, C)
    directed = is_acyclic(E.graph)
    underlying = underlying_graph_acyclic(E.graph)
    satisfied = directed if hypothesis == "directed" else underlying
    if not satisfied:
        status = HYPOTHESIS_FAILS
    elif canonical_ok:
        status = HOLDS
    else:
        status = COUNTEREXAMPLE
    return Verdict(status, hypothesis, directed, underlying, witness is not None,
                   witness, E.graph, C, canonical)


@dataclass
class CowReport:
    """Per-edge results. ``covers_to_ext``: (X, Y, edge present) for each cover X > Y in P.
    ``ext_to_covers``: (x, y, only path, X covers Y) for each Ext edge."""

    covers_to_ext: list[tuple[int, int, bool]]
    ext_to_covers: list[tuple[int, int, bool, bool]]

    @property
    def part_a(self) -> bool:
        return all(ok for *_, ok in self.covers_to_ext)

    @property
    def part_b(self) -> bool:
        return all(covers or not only for *_, only, covers in self.ext_to_covers)


def lemma_cow_checks(L: Lattice) -> CowReport:
    E = ext_graph(L)
    P, info = join_irreducibles(L)
    covers_to_ext = []
    for lo, hi in P.covers:
        X, Y = P.payload[hi], P.payload[lo]
        covers_to_ext.append((X, Y, E.graph.has_edge(info[X][1], info[Y][1])))
    ext_to_covers = []
    for s, t in sorted(E.graph.edges):
        rest = Digraph(E.graph.vertices, E.graph.edges - {(s, t)})
        only = not any(s in comp and t in comp for comp in _components(rest))
        X, Y = E.top_of[s], E.top_of[t]
        covers = L.lt(Y, X) and not any(
            L.lt(Y, Z) and L.lt(Z, X) for Z in P.payload)
        ext_to_covers.append((s, t, only, covers))
    return CowReport(covers_to_ext, ext_to_covers)


def decompose(L: Lattice) -> list[Lattice]:
    """Split L along the connected components of its Ext graph.

    Returns ``J(P_1), ..., J(P_k)`` where ``P_i`` are the join irreducibles
    whose top classes form one component; the product is checked to be
    isomorphic to ``L`` via the map ``A -> (join irreducibles below A in P_i)_i``.
    """
    E = ext_graph(L)
    P, info = join_irreducibles(L)
    ji = list(P.payload)
    comps = sorted(sorted(E.top_of[c] for c in comp) for comp in _components(E.graph))
    factors = []
    for comp in comps:
        idx = [ji.index(x) for x in comp]
        pos = {i: k for k, i in enumerate(idx)}
        down = [sum(1 << pos[j] for j in bits(P.down[i]) if j in pos) for i in idx]
        factors.append(downsets(Poset([P.names[i] for i in idx], down, payload=comp)))
    _check_product(L, comps, factors)
    return factors


def _check_product(L: Lattice, comps: list[list[int]], factors: list[Lattice]) -> None:
    lookups = []
    for comp, F in zip(comps, factors):
        lookups.append({frozenset(comp[i] for i in m): j for j, m in enumerate(F.payload)})
    prod = product(*factors)
    index = {t: i for i, t in enumerate(prod.payload)}
    image = []
    for a in range(L.n):
        try:
            key = tuple(lk[frozenset(x for x in comp if L.leq(x, a))]
                        for comp, lk in zip(comps, lookups))
        except KeyError:
            raise IsoFailure(f"{L.names[a]} does not split into down-sets") from None
        image.append(index[key])
    if sorted(image) != list(range(prod.n)):
        raise IsoFailure("product map is not a bijection")
    for a in range(L.n):
        for b in range(L.n):
            if L.leq(a, b) != prod.leq(image[a], image[b]):
                raise IsoFailure("product map does not preserve order")
