from __future__ import annotations

import pytest
from hypothesis import given, settings

from conftest import DATA, lattices
from distlat.birkhoff import (Digraph, Poset, antichain_poset, birkhoff_iso, boolean_poset, chain_poset,
                              cover_digraph, digraph_iso, downset_masks, downsets, join_irreducibles, poset_iso)
from distlat.errors import NotDistributive, SizeLimit
from distlat.generate import posets_up_to_iso
from distlat.io import load_lattice
from distlat.lattice import is_distributive, lattice_iso
from oracles import downsets_by_subsets


def test_join_irreducibles_examples(corpus):
    P, info = join_irreducibles(corpus["b2.json"])
    assert P.names == ("a", "b") and P.covers == ()
    P, info = join_irreducibles(corpus["chain3.json"])
    assert P.cover_labels() == [("a", "1")]
    L = corpus["chain3.json"]
    assert info[L.index("1")][0] == L.index("a")
    P, _ = join_irreducibles(corpus["d2.json"])
    assert P.n == 4 and poset_iso(P, boolean_poset(2)) is not None


def test_join_irreducibles_need_distributivity(corpus):
    with pytest.raises(NotDistributive):
        join_irreducibles(corpus["m3.json"])


def test_downsets_examples():
    assert downsets(antichain_poset(2)).n == 4
    assert downsets(chain_poset(2)).n == 3
    J = downsets(boolean_poset(2))
    assert J.n == 6
    assert lattice_iso(J, load_lattice(DATA / "d2.json")) is not None


def test_downset_cap():
    with pytest.raises(SizeLimit):
        downset_masks(antichain_poset(12), limit=1000)


def test_birkhoff_iso_examples(corpus):
    L = corpus["b2.json"]
    m = {L.names[a]: {L.names[x] for x in s} for a, s in birkhoff_iso(L).items()}
    assert m == {"0": set(), "a": {"a"}, "b": {"b"}, "1": {"a", "b"}}
    L = corpus["d2.json"]
    assert len(set(birkhoff_iso(L).values())) == 6


def test_cover_digraph_examples():
    assert cover_digraph(antichain_poset(2)).edges == frozenset()
    assert cover_digraph(chain_poset(2)).edge_labels() == [("1", "0")]
    G = cover_digraph(boolean_poset(2))
    assert G.n == 4 and len(G.edges) == 4
    assert ("{1,2}", "{1}") in G.edge_labels() and ("{1}", "{}") in G.edge_labels()


def test_digraph_iso_examples():
    e = Digraph(("x", "y"), frozenset({(0, 1)}))
    assert digraph_iso(e, e) == {0: 0, 1: 1}
    cyc = Digraph(("x", "y"), frozenset({(0, 1), (1, 0)}))
    assert digraph_iso(cyc, e) is None
    flipped = Digraph(("p", "q"), frozenset({(1, 0)}))
    assert digraph_iso(e, flipped) == {0: 1, 1: 0}


def test_digraph_rejects_loops():
    with pytest.raises(ValueError):
        Digraph(("x",), frozenset({(0, 0)}))


def test_digraph_iso_cap():
    G = Digraph(tuple(map(str, range(25))), frozenset())
    with pytest.raises(SizeLimit):
        digraph_iso(G, G)


def test_digraph_iso_cap_env(monkeypatch):
    monkeypatch.setenv("LATTICE_MAX_ELEMENTS", "30")
    G = Digraph(tuple(map(str, range(25))), frozenset())
    assert digraph_iso(G, G) is not None


@pytest.mark.parametrize("n", range(6))
def test_downsets_match_subset_oracle(n):
    for P in posets_up_to_iso(n):
        J = downsets(P)
        assert sorted(J.payload, key=sorted) == sorted(downsets_by_subsets(P), key=sorted)
        for a in range(J.n):
            for b in range(J.n):
                assert J.leq(a, b) == (J.payload[a] <= J.payload[b])


@pytest.mark.parametrize("n", range(6))
def test_round_trip_over_posets(n):
    for P in posets_up_to_iso(n):
        J = downsets(P)
        Q, _ = join_irreducibles(J)
        assert poset_iso(Q, P) is not None
        assert lattice_iso(downsets(Q), J) is not None


@settings(max_examples=100, deadline=None)
@given(lattices())
def test_birkhoff_iso_on_random_distributive(L):
    if not is_distributive(L):
        return
    m = birkhoff_iso(L)
    for a in range(L.n):
        for b in range(L.n):
            assert L.leq(a, b) == (m[a] <= m[b])
            assert m[L.meet[a][b]] == m[a] & m[b]
            assert m[L.join[a][b]] == m[a] | m[b]


def test_poset_iso_distinguishes():
    assert poset_iso(chain_poset(3), Poset.from_covers(["a", "b", "c"], [("a", "b"), ("a", "c")])) is None
    assert poset_iso(boolean_poset(2), boolean_poset(2)) is not None
