"""Join irreducibles, down-set lattices and the Birkhoff correspondence.

A finite distributive lattice ``L`` is recovered from the poset ``P`` of its
join irreducibles as the lattice ``J(P)`` of down-sets of ``P``; the witness
sends ``A`` to the set of join irreducibles below ``A``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import IsoFailure, NotDistributive, SizeLimit
from .factors import CoverInterval, factor_classes
from .lattice import Lattice, bits, covers_from_down, is_distributive, order_closure
from .limits import cap

MAX_DOWNSETS = 10**6
MAX_ISO_VERTICES = 20


class Poset:
    """A finite partial order held as down-set bitmasks, like :class:`Lattice`."""

    def __init__(self, names: Sequence[str], down: Sequence[int], payload: Sequence | None = None):
        if len(set(names)) != len(names):
            raise ValueError("element labels must be distinct")
        self.n = len(names)
        self.names = tuple(str(x) for x in names)
        self.down = tuple(down)
        up = [0] * self.n
        for x in range(self.n):
            for y in bits(self.down[x]):
                up[y] |= 1 << x
        self.up = tuple(up)
        self.payload = None if payload is None else tuple(payload)
        self.covers = tuple(covers_from_down(self.down))

    @classmethod
    def from_covers(cls, names: Sequence[str], cover_pairs: Iterable[tuple[str, str]]) -> "Poset":
        index = {name: i for i, name in enumerate(names)}
        pairs = [(index[lo], index[hi]) for lo, hi in cover_pairs]
        return cls(names, order_closure(len(names), pairs))

    def leq(self, a: int, b: int) -> bool:
        return bool(self.down[b] >> a & 1)

    def cover_labels(self) -> list[tuple[str, str]]:
        return [(self.names[lo], self.names[hi]) for lo, hi in self.covers]

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, covers={self.cover_labels()})"


def chain_poset(k: int) -> Poset:
    names = [str(i) for i in range(k)]
    return Poset.from_covers(names, [(names[i], names[i + 1]) for i in range(k - 1)])


def antichain_poset(k: int) -> Poset:
    return Poset([str(i) for i in range(k)], [1 << i for i in range(k)])


def boolean_poset(k: int) -> Poset:
    """All subsets of ``{1..k}`` under inclusion, labelled ``{1,2}`` style."""
    subsets = sorted(range(1 << k), key=lambda s: (s.bit_count(), s))
    pos = {s: i for i, s in enumerate(subsets)}
    names = ["{" + ",".join(str(b + 1) for b in bits(s)) + "}" for s in subsets]
    down = [sum(1 << pos[t] for t in subsets if t & s == t) for s in subsets]
    return Poset(names, down, payload=subsets)


@dataclass(frozen=True)
class Digraph:
    """Vertices are ``0..n-1`` with labels; edges are ``(source, target)`` id pairs."""

    vertices: tuple[str, ...]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        for s, t in self.edges:
            if s == t:
                raise ValueError(f"loop at {self.vertices[s]!r}")
            if not (0 <= s < len(self.vertices) and 0 <= t < len(self.vertices)):
                raise ValueError(f"edge ({s}, {t}) out of range")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def has_edge(self, s: int, t: int) -> bool:
        return (s, t) in self.edges

    def edge_labels(self) -> list[tuple[str, str]]:
        return sorted((self.vertices[s], self.vertices[t]) for s, t in self.edges)


def join_irreducibles(L: Lattice) -> tuple[Poset, dict[int, tuple[int, int]]]:
    """Join-irreducible subposet of a distributive lattice.

    Returns the poset (payload = lattice ids) and a map from each join
    irreducible ``X`` to ``(X0, x)``: its unique lower cover and the factor
    class of ``[X, X0]``.
    """
    if not L.memo("is_distributive", lambda: is_distributive(L)):
        raise NotDistributive("join irreducibles are computed for distributive lattices")
    fm = factor_classes(L)
    elems = [x for x in range(L.n) if len(L.lower_covers[x]) == 1]
    info = {}
    for x in elems:
        lo = L.lower_covers[x][0]
        info[x] = (lo, fm.class_of[CoverInterval(x, lo)])
    pos = {x: i for i, x in enumerate(elems)}
    down = [sum(1 << pos[y] for y in elems if L.leq(y, x)) for x in elems]
    return Poset([L.names[x] for x in elems], down, payload=elems), info


def downset_masks(P: Poset, limit: int | None = None) -> list[int]:
    """Every down-set of P as a bitmask, grown one element at a time."""
    limit = cap(MAX_DOWNSETS) if limit is None else limit
    found = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for d in frontier:
            for x in range(P.n):
                if not d >> x & 1 and (P.down[x] & ~(1 << x)) & ~d == 0:
                    e = d | 1 << x
                    if e not in found:
                        found.add(e)
                        nxt.append(e)
                        if len(found) > limit:
                            raise SizeLimit(f"more than {limit} down-sets")
        frontier = nxt
    return sorted(found, key=lambda m: (m.bit_count(), list(bits(m))))


def downsets(P: Poset, limit: int | None = None) -> Lattice:
    """The lattice J(P) of down-sets ordered by inclusion.

    Elements are ordered by size, then by sorted member ids; labels render the
    members as ``{a,b}``; payload holds the member id frozensets.
    """
    masks = downset_masks(P, limit)
    names = ["{" + ",".join(P.names[x] for x in bits(m)) + "}" for m in masks]
    down = [sum(1 << j for j, b in enumerate(masks) if b & a == b) for a in masks]
    return Lattice(names, down, payload=[frozenset(bits(m)) for m in masks])


def birkhoff_iso(L: Lattice) -> dict[int, frozenset[int]]:
    """Map each element to the set of join irreducibles below it (lattice ids).

    The map is checked to be an isomorphism onto ``downsets(P)``; a failed check
    raises IsoFailure.
    """
    P, info = join_irreducibles(L)
    ji = list(P.payload)
    J = downsets(P)
    target = {m: j for j, m in enumerate(J.payload)}
    image = []
    for a in range(L.n):
        members = frozenset(i for i, x in enumerate(ji) if L.leq(x, a))
        if members not in target:
            raise IsoFailure(f"{L.names[a]} maps to a non-down-set")
        image.append(target[members])
    if len(set(image)) != L.n or J.n != L.n:
        raise IsoFailure("Birkhoff map is not a bijection")
    for a in range(L.n):
        for b in range(L.n):
            if L.leq(a, b) != J.leq(image[a], image[b]):
                raise IsoFailure(f"order not preserved at {L.names[a]}, {L.names[b]}")
    return {a: frozenset(ji[i] for i in J.payload[image[a]]) for a in range(L.n)}


def cover_digraph(P: Poset) -> Digraph:
    """Edge ``x -> y`` iff ``x`` covers ``y``."""
    return Digraph(P.names, frozenset((hi, lo) for lo, hi in P.covers))


def digraph_iso(G: Digraph, H: Digraph, limit: int | None = None) -> dict[int, int] | None:
    """Lexicographically least edge-preserving bijection ``G -> H``, or None."""
    limit = cap(MAX_ISO_VERTICES) if limit is None else limit
    if max(G.n, H.n) > limit:
        raise SizeLimit(f"digraph isomorphism is limited to {limit} vertices")
    if G.n != H.n or len(G.edges) != len(H.edges):
        return None

    def degrees(D: Digraph) -> list[tuple[int, int]]:
        deg = [[0, 0] for _ in range(D.n)]
        for s, t in D.edges:
            deg[s][1] += 1
            deg[t][0] += 1
        return [tuple(d) for d in deg]

    dg, dh = degrees(G), degrees(H)
    if sorted(dg) != sorted(dh):
        return None
    fwd: list[int] = []
    used = [False] * H.n

    def search(x: int) -> bool:
        if x == G.n:
            return True
        for y in range(H.n):
            if used[y] or dg[x] != dh[y]:
                continue
            if all(G.has_edge(u, x) == H.has_edge(v, y) and G.has_edge(x, u) == H.has_edge(y, v)
                   for u, v in enumerate(fwd)):
                fwd.append(y)
                used[y] = True
                if search(x + 1):
                    return True
                fwd.pop()
                used[y] = False
        return False

    return dict(enumerate(fwd)) if search(0) else None


def poset_iso(P: Poset, Q: Poset) -> dict[int, int] | None:
    """Posets are isomorphic iff their Hasse diagrams are."""
    return digraph_iso(cover_digraph(P), cover_digraph(Q))
