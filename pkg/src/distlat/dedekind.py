"""Monotone Boolean functions and the Dedekind lattices D_n.

A function of ``n`` variables is stored as a ``2**n``-bit mask: bit ``S`` is set
iff the function is true on the subset ``S`` (bit ``i`` of ``S`` means variable
``i+1`` is true). Monotone functions are exactly the up-closed masks; conjunction
and disjunction are bitwise AND and OR.

The order used throughout is pointwise implication (mask inclusion), so the
constant-false function is the bottom and conjunctions sit below disjunctions.
The reverse convention (``P <= Q`` iff ``P | Q == P``) gives the dual lattice;
D_n is self-dual, but only under implication order are the join irreducibles
literally the ``2**n`` principal up-sets ``{S}`` ordered by reverse inclusion.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .birkhoff import birkhoff_iso, boolean_poset, downsets, join_irreducibles, poset_iso
from .errors import LatticeError, NTooLarge
from .lattice import Lattice, bits

MAX_ENUMERATE = 5
MAX_COUNT = 6
MAX_LATTICE = 4


@lru_cache(maxsize=None)
def superset_masks(n: int) -> tuple[int, ...]:
    """``out[S]`` has bit ``T`` set for every superset ``T`` of ``S``."""
    N = 1 << n
    return tuple(sum(1 << t for t in range(N) if t & s == s) for s in range(N))


@lru_cache(maxsize=None)
def subset_masks(n: int) -> tuple[int, ...]:
    N = 1 << n
    return tuple(sum(1 << t for t in range(N) if t & s == t) for s in range(N))


def _set_label(s: int) -> str:
    return "{" + ",".join(str(i + 1) for i in bits(s)) + "}"


@dataclass(frozen=True)
class AntichainFn:
    """A monotone Boolean function, identified by its up-set mask."""

    n: int
    upset: int

    def minimal_sets(self) -> list[int]:
        sub = subset_masks(self.n)
        return [s for s in bits(self.upset) if self.upset & sub[s] == 1 << s]

    def __le__(self, other: "AntichainFn") -> bool:  # pointwise implication
        return self.upset & ~other.upset == 0

    def __and__(self, other: "AntichainFn") -> "AntichainFn":
        return AntichainFn(self.n, self.upset & other.upset)

    def __or__(self, other: "AntichainFn") -> "AntichainFn":
        return AntichainFn(self.n, self.upset | other.upset)

    def __str__(self) -> str:
        if self.upset == 0:
            return "0"
        if self.upset == (1 << (1 << self.n)) - 1:
            return "1"
        return "|".join(_set_label(s) for s in self.minimal_sets())


def is_monotone(mask: int, n: int) -> bool:
    sup = superset_masks(n)
    return all(mask & sup[s] == sup[s] for s in bits(mask))


def principal(n: int, i: int) -> AntichainFn:
    """The generator P_i: true exactly when variable ``i`` (1-based) is."""
    return AntichainFn(n, superset_masks(n)[1 << (i - 1)])


def _check(n: int, top: int) -> None:
    if not 0 <= n <= top:
        raise NTooLarge(f"n = {n} is outside 0..{top}")


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[int, ...]:
    N = 1 << n
    sup, sub = superset_masks(n), subset_masks(n)
    out = []
    # grow antichains by adding minimal sets in increasing index order
    stack = [(0, 0, 0)]  # (next candidate, up-set of chosen, down-set of chosen)
    while stack:
        start, up, down = stack.pop()
        out.append(up)
        for t in range(start, N):
            if not (up | down) >> t & 1:
                stack.append((t + 1, up | sup[t], down | sub[t]))
    return tuple(sorted(out, key=lambda m: (m.bit_count(), m)))


def enumerate_Dn(n: int) -> list[AntichainFn]:
    """All monotone functions of ``n <= 5`` variables, by popcount then mask."""
    _check(n, MAX_ENUMERATE)
    return [AntichainFn(n, m) for m in _enumerate(n)]


def brute_force_masks(n: int) -> np.ndarray:
    """Filter all ``2**(2**n)`` masks for monotonicity (n <= 4)."""
    _check(n, 4)
    N = 1 << n
    masks = np.arange(1 << N, dtype=np.uint64)
    ok = np.ones(masks.shape, dtype=bool)
    for i in range(n):
        step = 1 << i
        without_i = sum(1 << s for s in range(N) if not s & step)
        shifted = (masks & np.uint64(without_i)) << np.uint64(step)
        ok &= (shifted & ~masks) == 0
    return masks[ok]


def _count_pairs(arr: np.ndarray, chunk: np.ndarray) -> int:
    f = chunk[:, None]
    return int(np.count_nonzero((arr[None, :] & f) == f))


def count_Dn(n: int, workers: int = 1, chunk: int = 256) -> int:
    """Dedekind number for ``n <= 6`` via ordered pairs ``f <= g`` in D_{n-1}.

    A monotone function of ``n`` variables splits into its restrictions at
    ``x_n = 0`` and ``x_n = 1``, which are monotone with the first implying the
    second. The pair space is cut into row blocks summed independently.
    """
    _check(n, MAX_COUNT)
    if n == 0:
        return len(_enumerate(0))
    arr = np.array(_enumerate(n - 1), dtype=np.uint64)
    blocks = [arr[i:i + chunk] for i in range(0, len(arr), chunk)]
    if workers <= 1:
        return sum(_count_pairs(arr, b) for b in blocks)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(lambda b: _count_pairs(arr, b), blocks))


def dedekind_lattice(n: int) -> Lattice:
    """D_n ordered by implication; payload holds the AntichainFn elements."""
    _check(n, MAX_LATTICE)
    fns = enumerate_Dn(n)
    down = [sum(1 << j for j, g in enumerate(fns) if g <= f) for f in fns]
    return Lattice([str(f) for f in fns], down, payload=fns)


def generated_closure(n: int) -> set[AntichainFn]:
    """Closure of the generators P_1..P_n under meet and join."""
    cur = {principal(n, i) for i in range(1, n + 1)}
    while True:
        new = cur | {a & b for a in cur for b in cur} | {a | b for a in cur for b in cur}
        if new == cur:
            return cur
        cur = new


@dataclass
class DnVerdict:
    n: int
    ok: bool
    size: int
    downset_count: int
    witness: dict[str, str] | None  # join irreducible label -> boolean poset label
    problem: str | None = None

    def to_dict(self) -> dict:
        return {"n": self.n, "ok": self.ok, "size": self.size,
                "downset_count": self.downset_count, "witness": self.witness,
                "problem": self.problem}


def verify_Dn_birkhoff(n: int) -> DnVerdict:
    """Check that the join irreducibles of D_n form a boolean lattice on n atoms."""
    _check(n, MAX_LATTICE)
    L = dedekind_lattice(n)
    P, _ = join_irreducibles(L)
    B = boolean_poset(n)
    iso = poset_iso(P, B)
    J = downsets(P)
    witness = None if iso is None else {P.names[a]: B.names[b] for a, b in iso.items()}
    problem = None
    if iso is None:
        problem = "join irreducibles are not a boolean lattice"
    elif J.n != L.n:
        problem = f"|J(P)| = {J.n} differs from |D_n| = {L.n}"
    else:
        try:
            birkhoff_iso(L)
        except LatticeError as exc:
            problem = f"Birkhoff map failed: {exc}"
    return DnVerdict(n, problem is None, L.n, J.n, witness, problem)
