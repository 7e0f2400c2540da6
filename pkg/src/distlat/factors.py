"""Simple lattice factors: perspectivity between cover intervals and its closure.

A cover interval is written ``[upper, lower]``. ``[U, V]`` is perspective down
onto ``[X, Y]`` when ``U | Y == X`` and ``U & Y == V``; the equivalence classes
of the generated relation are the simple lattice factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import NotACover, NotComparable, NotModular
from .lattice import Lattice, is_modular


class CoverInterval(NamedTuple):
    upper: int
    lower: int


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller index as representative
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass(frozen=True)
class FactorMap:
    """Assignment of every cover interval to its factor class.

    ``intervals`` lists the cover intervals ordered by ``(lower, upper)``;
    class ids are 0-based and ordered by each class's least member.
    """

    intervals: tuple[CoverInterval, ...]
    class_of: dict[CoverInterval, int]
    class_count: int

    def members(self, cls: int) -> list[CoverInterval]:
        return [iv for iv in self.intervals if self.class_of[iv] == cls]

    def __getitem__(self, interval: tuple[int, int]) -> int:
        return self.class_of[CoverInterval(*interval)]


def _check_cover(L: Lattice, iv: tuple[int, int]) -> CoverInterval:
    iv = CoverInterval(*iv)
    if not L.is_cover(iv.lower, iv.upper):
        raise NotACover(f"[{L.names[iv.upper]}, {L.names[iv.lower]}] is not a covering pair")
    return iv


def down_arrow(L: Lattice, uv: tuple[int, int], xy: tuple[int, int]) -> bool:
    """True iff ``[U,V]`` is perspective down onto ``[X,Y]``: ``U|Y == X`` and ``U&Y == V``."""
    (u, v), (x, y) = _check_cover(L, uv), _check_cover(L, xy)
    return L.join[u][y] == x and L.meet[u][y] == v


def factor_classes(L: Lattice) -> FactorMap:
    """Connected components of the perspectivity graph on cover intervals."""
    if not L.memo("is_modular", lambda: is_modular(L)):
        raise NotModular("factor classes are only defined here for modular lattices")
    return L.memo("factor_classes", lambda: _factor_classes(L))


def _factor_classes(L: Lattice) -> FactorMap:
    intervals = tuple(CoverInterval(hi, lo) for lo, hi in L.covers)
    pos = {iv: i for i, iv in enumerate(intervals)}
    uf = UnionFind(len(intervals))
    for i, (x, y) in enumerate(intervals):
        # every [U, U & Y] with U | Y == X that is itself a cover
        for u in range(L.n):
            if u != x and L.join[u][y] == x:
                j = pos.get(CoverInterval(u, L.meet[u][y]))
                if j is not None:
                    uf.union(i, j)
    ids: dict[int, int] = {}
    class_of = {}
    for i, iv in enumerate(intervals):
        class_of[iv] = ids.setdefault(uf.find(i), len(ids))
    return FactorMap(intervals, class_of, len(ids))


def is_multiplicity_free(L: Lattice) -> bool:
    """True iff no maximal chain passes through two cover intervals of one class.

    Two intervals of one class lie on a common maximal chain exactly when the
    upper end of one is below the lower end of the other, so the check is a
    pairwise scan rather than a chain enumeration.
    """
    fm = factor_classes(L)
    by_class: list[list[CoverInterval]] = [[] for _ in range(fm.class_count)]
    for iv in fm.intervals:
        by_class[fm.class_of[iv]].append(iv)
    for members in by_class:
        for a in members:
            for b in members:
                if a != b and L.leq(a.upper, b.lower):
                    return False
    return True


def interval_factors(L: Lattice, x: int, y: int) -> frozenset[int]:
    """Factor classes met along one maximal chain from ``y`` up to ``x``."""
    if not L.leq(y, x):
        raise NotComparable(f"{L.names[y]} is not below {L.names[x]}")
    fm = factor_classes(L)
    out = set()
    cur = y
    while cur != x:
        nxt = next(z for z in L.upper_covers[cur] if L.leq(z, x))
        out.add(fm.class_of[CoverInterval(nxt, cur)])
        cur = nxt
    return frozenset(out)
