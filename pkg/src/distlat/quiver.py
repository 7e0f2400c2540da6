"""Thin quiver representations and their submodule lattices.

A thin representation has every vertex space of dimension 0 or 1, so a
subrepresentation keeps each vertex wholly or not at all. The only constraint
is that a nonzero arrow leaving a kept vertex lands in a kept vertex; field
scalars never matter and are not stored.

Text formats (statements separated by newlines or ``;``, ``#`` starts a comment)::

    vertices 1 2 3
    arrow a 1 2
    arrow b 2 3

    support 1 2 3
    nonzero a b
"""

from __future__ import annotations

import graphlib
import warnings
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .birkhoff import Digraph
from .errors import (DimNotThin, LabelConflict, NotIndecomposable, ParseError, QuiverNotAcyclic,
                     SizeLimit, UnknownVertex)
from .ext import ext_graph
from .factors import UnionFind, factor_classes
from .lattice import Lattice
from .limits import cap

MAX_CANDIDATES = 2**20


class RepairWarning(UserWarning):
    """A representation was adjusted to satisfy the thinness invariants."""


class Arrow(NamedTuple):
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        if len({a.name for a in self.arrows}) != len(self.arrows):
            raise ValueError("duplicate arrow names")
        known = set(self.vertices)
        for a in self.arrows:
            for v in (a.source, a.target):
                if v not in known:
                    raise UnknownVertex(f"arrow {a.name} uses unknown vertex {v!r}")

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def is_acyclic(self) -> bool:
        preds = {v: set() for v in self.vertices}
        for a in self.arrows:
            preds[a.target].add(a.source)
        try:
            tuple(graphlib.TopologicalSorter(preds).static_order())
        except graphlib.CycleError:
            return False
        return True

    def to_text(self) -> str:
        lines = ["vertices " + " ".join(self.vertices)]
        lines += [f"arrow {a.name} {a.source} {a.target}" for a in self.arrows]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "arrows": [list(a) for a in self.arrows]}

    @classmethod
    def from_json(cls, data: dict) -> "Quiver":
        return cls(tuple(map(str, data["vertices"])),
                   tuple(Arrow(*map(str, a)) for a in data.get("arrows", [])))


@dataclass(frozen=True)
class ThinRep:
    """Support vertices (dimension one) and the names of the nonzero arrows."""

    support: frozenset[str]
    nonzero: frozenset[str]

    def to_text(self, Q: Quiver) -> str:
        lines = ["support " + " ".join(v for v in Q.vertices if v in self.support)]
        nz = [a.name for a in Q.arrows if a.name in self.nonzero]
        if nz:
            lines.append("nonzero " + " ".join(nz))
        return "\n".join(lines) + "\n"

    def to_json(self, Q: Quiver) -> dict:
        return {"support": [v for v in Q.vertices if v in self.support],
                "nonzero": [a.name for a in Q.arrows if a.name in self.nonzero]}


def make_rep(Q: Quiver, support, nonzero=()) -> ThinRep:
    """Validate a representation, forcing arrows with an unsupported endpoint to zero."""
    support = frozenset(map(str, support))
    unknown = support - set(Q.vertices)
    if unknown:
        raise UnknownVertex(f"unknown vertex {sorted(unknown)[0]!r}")
    kept = set()
    for name in nonzero:
        try:
            a = Q.arrow(name)
        except KeyError:
            raise ParseError(f"unknown arrow {name!r}") from None
        if a.source in support and a.target in support:
            kept.add(a.name)
        else:
            warnings.warn(f"arrow {a.name} has an endpoint outside the support; treated as zero",
                          RepairWarning, stacklevel=2)
    return ThinRep(support, frozenset(kept))


def _statements(text: str) -> Iterator[tuple[int, int, list[str]]]:
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        col = 0
        for chunk in line.split(";"):
            words = chunk.split()
            if words:
                yield lineno, col + len(chunk) - len(chunk.lstrip()) + 1, words
            col += len(chunk) + 1


def parse_quiver(text: str) -> Quiver:
    vertices: list[str] = []
    arrows: list[Arrow] = []
    for line, col, words in _statements(text):
        key, args = words[0], words[1:]
        if key == "vertices":
            vertices.extend(args)
        elif key == "arrow":
            if len(args) != 3:
                raise ParseError("expected 'arrow <name> <source> <target>'", line, col)
            for v in args[1:]:
                if v not in vertices:
                    raise UnknownVertex(f"unknown vertex {v!r}", line, col)
            arrows.append(Arrow(*args))
        else:
            raise ParseError(f"unknown statement {key!r}", line, col)
    try:
        return Quiver(tuple(vertices), tuple(arrows))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_rep(text: str, Q: Quiver) -> ThinRep:
    support: list[str] = []
    nonzero: list[str] = []
    for line, col, words in _statements(text):
        key, args = words[0], words[1:]
        if key == "support":
            for v in args:
                if v not in Q.vertices:
                    raise UnknownVertex(f"unknown vertex {v!r}", line, col)
            support.extend(args)
        elif key == "nonzero":
            nonzero.extend(args)
        elif key == "dim":
            if len(args) != 2:
                raise ParseError("expected 'dim <vertex> <0|1>'", line, col)
            v, d = args
            if v not in Q.vertices:
                raise UnknownVertex(f"unknown vertex {v!r}", line, col)
            if d not in ("0", "1"):
                raise DimNotThin(f"dimension {d} at vertex {v} is not 0 or 1", line, col)
            if d == "1":
                support.append(v)
        else:
            raise ParseError(f"unknown statement {key!r}", line, col)
    return make_rep(Q, support, nonzero)


def _successors(Q: Quiver, M: ThinRep) -> dict[str, set[str]]:
    succ: dict[str, set[str]] = {v: set() for v in Q.vertices if v in M.support}
    for a in Q.arrows:
        if a.name in M.nonzero:
            succ[a.source].add(a.target)
    return succ


def submodule_lattice(Q: Quiver, M: ThinRep) -> Lattice:
    """Lattice of subrepresentations as vertex subsets of the support.

    Labels are ``{1,2}`` style member lists in quiver vertex order; payload
    holds the frozensets.
    """
    order = [v for v in Q.vertices if v in M.support]
    if 2 ** len(order) > cap(MAX_CANDIDATES):
        raise SizeLimit(f"support of size {len(order)} exceeds the enumeration cap")
    succ = _successors(Q, M)
    closure = {}
    for v in order:
        seen, stack = {v}, [v]
        while stack:
            for t in succ[stack.pop()]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        closure[v] = frozenset(seen)
    found = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for s in frontier:
            for v in order:
                if v not in s:
                    t = s | closure[v]
                    if t not in found:
                        found.add(t)
                        nxt.append(t)
        frontier = nxt
    rank = {v: i for i, v in enumerate(order)}
    subs = sorted(found, key=lambda s: (len(s), sorted(rank[v] for v in s)))
    names = ["{" + ",".join(sorted(s, key=rank.__getitem__)) + "}" for s in subs]
    down = [sum(1 << j for j, b in enumerate(subs) if b <= a) for a in subs]
    return Lattice(names, down, payload=subs)


def is_indecomposable(Q: Quiver, M: ThinRep) -> bool:
    """Support is nonempty and connected through nonzero arrows."""
    order = [v for v in Q.vertices if v in M.support]
    if not order:
        return False
    pos = {v: i for i, v in enumerate(order)}
    uf = UnionFind(len(order))
    for a in Q.arrows:
        if a.name in M.nonzero:
            uf.union(pos[a.source], pos[a.target])
    return len({uf.find(i) for i in range(len(order))}) == 1


def ext_R_induced(Q: Quiver, M: ThinRep) -> Digraph:
    """Arrows of Q between support vertices, parallel arrows collapsed."""
    if not Q.is_acyclic():
        raise QuiverNotAcyclic("path algebra comparison needs an acyclic quiver")
    order = [v for v in Q.vertices if v in M.support]
    pos = {v: i for i, v in enumerate(order)}
    edges = {(pos[a.source], pos[a.target]) for a in Q.arrows
             if a.source in pos and a.target in pos}
    return Digraph(tuple(order), frozenset(edges))


def support_is_tree(Q: Quiver, M: ThinRep) -> bool:
    """The underlying multigraph of Q restricted to the support is a tree."""
    order = [v for v in Q.vertices if v in M.support]
    pos = {v: i for i, v in enumerate(order)}
    uf = UnionFind(len(order))
    edges = 0
    for a in Q.arrows:
        if a.source in pos and a.target in pos:
            if uf.find(pos[a.source]) == uf.find(pos[a.target]):
                return False
            uf.union(pos[a.source], pos[a.target])
            edges += 1
    return len(order) > 0 and edges == len(order) - 1


def class_vertex_map(L: Lattice, M: ThinRep) -> dict[int, str]:
    """Label each factor class by the single vertex its cover intervals add."""
    fm = factor_classes(L)
    out: dict[int, str] = {}
    for iv in fm.intervals:
        added = L.payload[iv.upper] - L.payload[iv.lower]
        if len(added) != 1:
            raise LabelConflict(f"cover interval adds {sorted(added)}")
        (v,) = added
        cls = fm.class_of[iv]
        if out.setdefault(cls, v) != v:
            raise LabelConflict(f"class {cls} carries vertices {out[cls]} and {v}")
    if sorted(out.values()) != sorted(M.support) or len(set(out.values())) != len(out):
        raise LabelConflict("class labels are not a bijection onto the support")
    return dict(sorted(out.items()))


@dataclass
class QuiverVerdict:
    status: str  # "equal" or "not_equal"
    ext_lattice: Digraph
    ext_ring: Digraph
    missing: list[tuple[str, str]]  # in the ring-level graph only
    extra: list[tuple[str, str]]    # in the lattice-level graph only
    tree: bool

    @property
    def exploratory(self) -> bool:
        return not self.tree

    def to_dict(self) -> dict:
        return {"status": self.status, "tree": self.tree, "exploratory": self.exploratory,
                "ext_lattice": [list(e) for e in self.ext_lattice.edge_labels()],
                "ext_ring": [list(e) for e in self.ext_ring.edge_labels()],
                "missing": [list(e) for e in self.missing],
                "extra": [list(e) for e in self.extra]}


def ext_lattice_by_vertex(Q: Quiver, M: ThinRep) -> Digraph:
    """Ext graph of the submodule lattice with classes renamed to support vertices."""
    L = submodule_lattice(Q, M)
    E = ext_graph(L)
    label = class_vertex_map(L, M)
    order = [v for v in Q.vertices if v in M.support]
    pos = {v: i for i, v in enumerate(order)}
    edges = {(pos[label[s]], pos[label[t]]) for s, t in E.graph.edges}
    return Digraph(tuple(order), frozenset(edges))


def verify_theorem_quiver(Q: Quiver, M: ThinRep) -> QuiverVerdict:
    if not Q.is_acyclic():
        raise QuiverNotAcyclic("the quiver has a directed cycle")
    if not is_indecomposable(Q, M):
        raise NotIndecomposable("representation is decomposable or zero")
    lat = ext_lattice_by_vertex(Q, M)
    ring = ext_R_induced(Q, M)
    a, b = set(lat.edge_labels()), set(ring.edge_labels())
    return QuiverVerdict("equal" if a == b else "not_equal", lat, ring,
                         sorted(b - a), sorted(a - b), support_is_tree(Q, M))
