"""Exhaustive and random small instances: posets, modular lattices, quivers, thin reps."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Iterator

from .birkhoff import Poset, downset_masks
from .errors import NotALattice
from .lattice import Lattice, bits, is_modular, product
from .quiver import Arrow, Quiver, ThinRep

LETTERS = "abcdefghijklmnop"


def _canonical(n: int, down: tuple[int, ...]) -> tuple[int, ...]:
    """Least relation encoding over orderings that respect an invariant partition."""
    up = [0] * n
    for x in range(n):
        for y in bits(down[x]):
            up[y] |= 1 << x
    base = [(down[x].bit_count(), up[x].bit_count()) for x in range(n)]
    key = [(base[x],
            tuple(sorted(base[y] for y in bits(down[x]))),
            tuple(sorted(base[y] for y in bits(up[x]))))
           for x in range(n)]
    blocks = [list(g) for _, g in itertools.groupby(sorted(range(n), key=key.__getitem__),
                                                   key=key.__getitem__)]
    best = None
    for perms in itertools.product(*(itertools.permutations(b) for b in blocks)):
        order = [x for p in perms for x in p]
        pos = {x: i for i, x in enumerate(order)}
        code = tuple(sum(1 << pos[y] for y in bits(down[x])) for x in order)
        if best is None or code < best:
            best = code
    return best


def poset_canonical_form(P: Poset) -> tuple[int, ...]:
    return _canonical(P.n, P.down)


@lru_cache(maxsize=None)
def _posets(n: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    seen = {}
    for down in _posets(n - 1):
        P = Poset(LETTERS[: n - 1], down)
        # every poset arises by adding a maximal element over some down-set
        for d in downset_masks(P):
            new = down + (d | 1 << (n - 1),)
            seen.setdefault(_canonical(n, new), new)
    return tuple(seen[k] for k in sorted(seen))


def posets_up_to_iso(n: int) -> list[Poset]:
    """One representative per isomorphism class of n-element posets, labelled a, b, ..."""
    return [Poset(LETTERS[:n], down) for down in _posets(n)]


def all_posets(max_n: int, min_n: int = 0) -> Iterator[Poset]:
    for n in range(min_n, max_n + 1):
        yield from posets_up_to_iso(n)


def closure_lattice(ground: int, generators: list[int]) -> Lattice:
    """Intersection-closed family spanned by ``generators`` plus the full set."""
    full = (1 << ground) - 1
    family = {full}
    frontier = set(generators) - family
    while frontier:
        family |= frontier
        frontier = {a & b for a in family for b in family} - family
    sets = sorted(family, key=lambda m: (m.bit_count(), m))
    names = ["{" + ",".join(str(i + 1) for i in bits(m)) + "}" for m in sets]
    down = [sum(1 << j for j, b in enumerate(sets) if b & a == b) for a in sets]
    return Lattice(names, down, payload=sets)


def random_modular_lattices(count: int, max_size: int = 12, seed: int = 0) -> list[Lattice]:
    """``count`` random modular lattices with at most ``max_size`` elements.

    Draws intersection-closed set systems (every finite lattice is one) and
    products of two such draws; keeps the modular ones.
    """
    rng = random.Random(seed)
    out: list[Lattice] = []
    pool: list[Lattice] = []
    while len(out) < count:
        if pool and rng.random() < 0.25:
            A, B = rng.choice(pool), rng.choice(pool)
            if A.n * B.n > max_size:
                continue
            L = product(A, B)
        else:
            ground = rng.randint(3, 6)
            if rng.random() < 0.3:
                # pairwise disjoint blocks close up to an M_k-like shape
                labels = [rng.randrange(ground) for _ in range(ground)]
                gens = [sum(1 << i for i in range(ground) if labels[i] == b) for b in set(labels)]
            else:
                gens = [rng.randrange(1 << ground) for _ in range(rng.randint(2, 6))]
            try:
                L = closure_lattice(ground, gens)
            except NotALattice:
                continue
        if L.n < 4 and rng.random() < 0.8:
            continue
        if L.n <= max_size and is_modular(L):
            out.append(L)
            if L.n <= 6:
                pool.append(L)
    return out


@lru_cache(maxsize=None)
def _quivers(max_vertices: int, max_arrows: int) -> tuple[tuple[int, tuple[tuple[int, int], ...]], ...]:
    seen = {}
    for k in range(1, max_vertices + 1):
        pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
        perms = list(itertools.permutations(range(k)))
        for m in range(max_arrows + 1):
            for arrows in itertools.combinations_with_replacement(pairs, m):
                code = min(tuple(sorted((p[i], p[j]) for i, j in arrows)) for p in perms)
                seen.setdefault((k, code), (k, arrows))
    return tuple(seen[key] for key in sorted(seen))


def acyclic_quivers(max_vertices: int = 4, max_arrows: int = 4) -> list[Quiver]:
    """Acyclic quivers up to isomorphism, parallel arrows allowed.

    Vertices are ``1..k``; every arrow points from a smaller to a larger
    vertex, which is no loss since each acyclic quiver has a topological order.
    """
    out = []
    for k, arrows in _quivers(max_vertices, max_arrows):
        verts = tuple(str(i + 1) for i in range(k))
        out.append(Quiver(verts, tuple(Arrow(LETTERS[a], verts[i], verts[j])
                                       for a, (i, j) in enumerate(arrows))))
    return out


def thin_reps(Q: Quiver) -> Iterator[ThinRep]:
    """Every thin representation: each support subset with each nonzero pattern inside it."""
    for r in range(len(Q.vertices) + 1):
        for support in itertools.combinations(Q.vertices, r):
            s = set(support)
            inside = [a.name for a in Q.arrows if a.source in s and a.target in s]
            for nz in itertools.product((False, True), repeat=len(inside)):
                yield ThinRep(frozenset(support),
                              frozenset(name for name, on in zip(inside, nz) if on))
