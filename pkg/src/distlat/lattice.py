"""Finite lattices with precomputed order, meet and join tables.

Elements are dense integer ids ``0..n-1``; labels live in a separate table.
The order is held as one bitmask per element (``down[x]`` has bit ``y`` set
iff ``y <= x``), which keeps every downstream scan a handful of integer ops.
"""

from __future__ import annotations

import graphlib
import itertools
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import ChainExplosion, CycleError, NoBoundsError, NotALattice
from .limits import cap

MAX_CHAINS = 10**6


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def order_closure(n: int, cover_pairs: Iterable[tuple[int, int]]) -> list[int]:
    """Reflexive-transitive closure of ``(lower, upper)`` pairs as down-set masks.

    Raises CycleError if the closure is not antisymmetric.
    """
    lower: list[set[int]] = [set() for _ in range(n)]
    for lo, up in cover_pairs:
        if lo == up:
            raise CycleError(f"element {lo} is listed as covering itself")
        lower[up].add(lo)
    sorter = graphlib.TopologicalSorter({x: lower[x] for x in range(n)})
    try:
        order = list(sorter.static_order())
    except graphlib.CycleError as exc:
        raise CycleError(f"cover relation has a cycle through {exc.args[1]}") from None
    down = [0] * n
    for x in order:
        mask = 1 << x
        for lo in lower[x]:
            mask |= down[lo]
        down[x] = mask
    return down


def covers_from_down(down: Sequence[int]) -> list[tuple[int, int]]:
    """Transitive reduction of an order given by down-set masks."""
    n = len(down)
    up = [0] * n
    for x in range(n):
        for y in bits(down[x]):
            up[y] |= 1 << x
    out = []
    for a in range(n):
        strict = down[a] & ~(1 << a)
        for b in bits(strict):
            if strict & up[b] == 1 << b:
                out.append((b, a))
    out.sort()
    return out


class Lattice:
    """An immutable finite lattice.

    Build one with :meth:`from_covers` or :meth:`from_order`; the constructor
    itself assumes ``down`` already encodes a partial order.

    Attributes
    ----------
    n : number of elements
    names : label per element
    down, up : bitmask per element of the elements below / above it (inclusive)
    meet, join : n x n tables of element ids (tuples of tuples)
    covers : sorted ``(lower, upper)`` pairs of the covering relation
    bottom, top : element ids
    payload : optional per-element objects (e.g. the sets a down-set lattice is built from)
    """

    def __init__(self, names: Sequence[str], down: Sequence[int], payload: Sequence | None = None):
        n = len(names)
        if len(set(names)) != n:
            raise ValueError("element labels must be distinct")
        self.n = n
        self.names = tuple(str(x) for x in names)
        self.down = tuple(down)
        up = [0] * n
        for x in range(n):
            for y in bits(self.down[x]):
                up[y] |= 1 << x
        self.up = tuple(up)
        self.payload = None if payload is None else tuple(payload)
        self._index = {name: i for i, name in enumerate(self.names)}
        self._memo: dict = {}

        by_down = {m: i for i, m in enumerate(self.down)}
        by_up = {m: i for i, m in enumerate(self.up)}
        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for a in range(n):
            meet[a][a] = join[a][a] = a
            for b in range(a + 1, n):
                m = by_down.get(self.down[a] & self.down[b])
                if m is None:
                    raise NotALattice(self.names[a], self.names[b], "meet")
                j = by_up.get(self.up[a] & self.up[b])
                if j is None:
                    raise NotALattice(self.names[a], self.names[b], "join")
                meet[a][b] = meet[b][a] = m
                join[a][b] = join[b][a] = j
        self.meet = tuple(map(tuple, meet))
        self.join = tuple(map(tuple, join))

        full = (1 << n) - 1
        if n == 0:
            raise NoBoundsError("the empty poset has no top or bottom")
        bottoms = [x for x in range(n) if self.up[x] == full]
        tops = [x for x in range(n) if self.down[x] == full]
        if not bottoms or not tops:
            raise NoBoundsError("no global bottom or top element")
        self.bottom, self.top = bottoms[0], tops[0]
        self.covers = tuple(covers_from_down(self.down))

        lower_covers: list[list[int]] = [[] for _ in range(n)]
        upper_covers: list[list[int]] = [[] for _ in range(n)]
        for lo, hi in self.covers:
            lower_covers[hi].append(lo)
            upper_covers[lo].append(hi)
        self.lower_covers = tuple(map(tuple, lower_covers))
        self.upper_covers = tuple(map(tuple, upper_covers))

        height = [0] * n
        for x in sorted(range(n), key=lambda i: self.down[i].bit_count()):
            height[x] = max((height[y] + 1 for y in self.lower_covers[x]), default=0)
        self.height = tuple(height)

    # construction

    @classmethod
    def from_covers(cls, names: Sequence[str], cover_pairs: Iterable[tuple[str, str]],
                    payload: Sequence | None = None) -> "Lattice":
        """Build a lattice from labels and ``(lower, upper)`` label pairs.

        Redundant (transitively implied) pairs are accepted; the reported
        ``covers`` are always the transitive reduction.
        """
        index = {name: i for i, name in enumerate(names)}
        if len(index) != len(names):
            raise ValueError("element labels must be distinct")
        try:
            pairs = [(index[lo], index[up]) for lo, up in cover_pairs]
        except KeyError as exc:
            raise ValueError(f"cover pair references unknown element {exc.args[0]!r}") from None
        return cls(names, order_closure(len(names), pairs), payload)

    @classmethod
    def from_order(cls, names: Sequence[str], down: Sequence[int],
                   payload: Sequence | None = None) -> "Lattice":
        return cls(names, down, payload)

    # queries

    def index(self, name: str) -> int:
        return self._index[name]

    def leq(self, a: int, b: int) -> bool:
        return bool(self.down[b] >> a & 1)

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq(a, b)

    def is_cover(self, lower: int, upper: int) -> bool:
        return lower in self.lower_covers[upper]

    def between(self, lower: int, upper: int) -> int:
        """Mask of elements strictly between ``lower`` and ``upper``."""
        return self.up[lower] & self.down[upper] & ~(1 << lower) & ~(1 << upper)

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=bool)
        for b in range(self.n):
            for a in bits(self.down[b]):
                m[a, b] = True
        m.flags.writeable = False
        return m

    @cached_property
    def meet_table(self) -> np.ndarray:
        t = np.array(self.meet, dtype=np.int64).reshape(self.n, self.n)
        t.flags.writeable = False
        return t

    @cached_property
    def join_table(self) -> np.ndarray:
        t = np.array(self.join, dtype=np.int64).reshape(self.n, self.n)
        t.flags.writeable = False
        return t

    def memo(self, key, compute):
        """Cache a derived value; the lattice itself never changes."""
        if key not in self._memo:
            self._memo[key] = compute()
        return self._memo[key]

    def cover_labels(self) -> list[tuple[str, str]]:
        return [(self.names[lo], self.names[hi]) for lo, hi in self.covers]

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Lattice(n={self.n}, covers={len(self.covers)})"


def chain_lattice(k: int) -> Lattice:
    """The k-element chain ``0 < 1 < ... < k-1``."""
    names = [str(i) for i in range(k)]
    return Lattice.from_covers(names, [(names[i], names[i + 1]) for i in range(k - 1)])


def product(*lattices: Lattice) -> Lattice:
    """Direct product ordered componentwise. Payload holds the component id tuples."""
    tuples = list(itertools.product(*(range(L.n) for L in lattices)))
    names = ["(" + ",".join(L.names[i] for L, i in zip(lattices, t)) + ")" for t in tuples]
    down = []
    for t in tuples:
        mask = 0
        for j, s in enumerate(tuples):
            if all(L.leq(a, b) for L, a, b in zip(lattices, s, t)):
                mask |= 1 << j
        down.append(mask)
    return Lattice(names, down, payload=tuples)


def is_modular(L: Lattice) -> bool:
    """Modular law ``x | (y & z) == (x | y) & z`` for all ``x <= z``."""
    M, J, leq = L.meet_table, L.join_table, L.leq_matrix
    cols = np.arange(L.n)
    for x in range(L.n):
        lhs = J[x][M]                    # [y, z] -> x | (y & z)
        rhs = M[J[x][:, None], cols]     # [y, z] -> (x | y) & z
        bad = (lhs != rhs) & leq[x][None, :]
        if bad.any():
            return False
    return True


def is_distributive(L: Lattice) -> bool:
    """Distributive law ``x & (y | z) == (x & y) | (x & z)`` over all triples."""
    M, J = L.meet_table, L.join_table
    for x in range(L.n):
        mx = M[x]
        if (mx[J] != J[mx[:, None], mx[None, :]]).any():
            return False
    return True


def maximal_chains(L: Lattice, limit: int | None = None) -> list[tuple[int, ...]]:
    """All saturated chains from bottom to top, in lexicographic order of ids."""
    limit = cap(MAX_CHAINS) if limit is None else limit
    out: list[tuple[int, ...]] = []
    path = [L.bottom]

    def walk(x: int) -> None:
        if x == L.top:
            if len(out) >= limit:
                raise ChainExplosion(f"more than {limit} maximal chains")
            out.append(tuple(path))
            return
        for y in L.upper_covers[x]:
            path.append(y)
            walk(y)
            path.pop()

    walk(L.bottom)
    return out


def _invariants(L: Lattice) -> list[tuple[int, ...]]:
    return [(L.height[x], len(L.lower_covers[x]), len(L.upper_covers[x]),
             L.down[x].bit_count(), L.up[x].bit_count()) for x in range(L.n)]


def lattice_iso(A: Lattice, B: Lattice) -> dict[int, int] | None:
    """An order isomorphism ``A -> B`` as an id map, or None.

    Backtracking over elements in height order; candidates must agree on
    height, cover degrees and up/down set sizes.
    """
    if A.n != B.n or len(A.covers) != len(B.covers):
        return None
    inv_a, inv_b = _invariants(A), _invariants(B)
    if sorted(inv_a) != sorted(inv_b):
        return None
    order = sorted(range(A.n), key=lambda x: (inv_a[x], x))
    fwd: dict[int, int] = {}
    used = [False] * B.n

    def consistent(x: int, y: int) -> bool:
        for u, v in fwd.items():
            if A.leq(u, x) != B.leq(v, y) or A.leq(x, u) != B.leq(y, v):
                return False
        return True

    def search(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        for y in range(B.n):
            if not used[y] and inv_b[y] == inv_a[x] and consistent(x, y):
                fwd[x] = y
                used[y] = True
                if search(i + 1):
                    return True
                del fwd[x]
                used[y] = False
        return False

    return dict(sorted(fwd.items())) if search(0) else None
