from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import lattices
from distlat.errors import ChainExplosion, CycleError, NoBoundsError, NotALattice
from distlat.lattice import (Lattice, chain_lattice, is_distributive, is_modular, lattice_iso, maximal_chains,
                             product)
from oracles import (cover_pairs, distributive_by_triples, has_sublattice, leq_matrix, maximal_chains_oracle,
                     meet_join, modular_by_triples)

B2_COVERS = [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]


def b2():
    return Lattice.from_covers(["0", "a", "b", "1"], B2_COVERS)


def test_chain_meet_join_are_min_max():
    L = chain_lattice(3)
    for a in range(3):
        for b in range(3):
            assert L.meet[a][b] == min(a, b)
            assert L.join[a][b] == max(a, b)


def test_b2_tables():
    L = b2()
    a, b = L.index("a"), L.index("b")
    assert L.names[L.meet[a][b]] == "0"
    assert L.names[L.join[a][b]] == "1"
    assert L.bottom == L.index("0") and L.top == L.index("1")


def test_bowtie_is_not_a_lattice():
    with pytest.raises(NotALattice):
        Lattice.from_covers(["0", "a", "b", "c", "d"],
                            [("0", "a"), ("0", "b"), ("a", "c"), ("b", "c"), ("a", "d"), ("b", "d")])


def test_two_tops_without_bottom():
    with pytest.raises(NotALattice):
        Lattice.from_covers(["a", "b"], [])


def test_empty_has_no_bounds():
    with pytest.raises(NoBoundsError):
        Lattice.from_covers([], [])


def test_cycle_rejected():
    with pytest.raises(CycleError):
        Lattice.from_covers(["a", "b"], [("a", "b"), ("b", "a")])


def test_redundant_pairs_reduce_to_covers():
    L = Lattice.from_covers(["0", "a", "1"], [("0", "a"), ("a", "1"), ("0", "1")])
    assert L.cover_labels() == [("0", "a"), ("a", "1")]


def test_unknown_label():
    with pytest.raises(ValueError):
        Lattice.from_covers(["0", "1"], [("0", "x")])


@pytest.mark.parametrize("name,modular,distributive", [
    ("chain3.json", True, True),
    ("b2.json", True, True),
    ("b3.json", True, True),
    ("m3.json", True, False),
    ("n5.json", False, False),
    ("d2.json", True, True),
    ("d3.json", True, True),
])
def test_corpus_flags(corpus, name, modular, distributive):
    L = corpus[name]
    assert is_modular(L) is modular
    assert is_distributive(L) is distributive
    assert modular_by_triples(L) is modular
    assert distributive_by_triples(L) is distributive


def test_maximal_chains_examples(corpus):
    def named(L):
        return [[L.names[x] for x in c] for c in maximal_chains(L)]

    assert named(corpus["chain3.json"]) == [["0", "a", "1"]]
    assert named(corpus["b2.json"]) == [["0", "a", "1"], ["0", "b", "1"]]
    assert sorted(named(corpus["m3.json"])) == [["0", f"m{i}", "1"] for i in (1, 2, 3)]


def test_chain_explosion():
    L = product(*[chain_lattice(2)] * 5)
    with pytest.raises(ChainExplosion):
        maximal_chains(L, limit=100)
    assert len(maximal_chains(L)) == 120


def test_product_of_chains():
    L = product(chain_lattice(2), chain_lattice(3))
    assert L.n == 6
    assert is_distributive(L)
    assert L.payload[L.top] == (1, 2)


def test_lattice_iso_finds_relabelled_copy():
    L = b2()
    M = Lattice.from_covers(["bot", "x", "y", "top"], [("bot", "y"), ("bot", "x"), ("x", "top"), ("y", "top")])
    iso = lattice_iso(L, M)
    assert iso is not None
    for a in range(4):
        for b in range(4):
            assert L.leq(a, b) == M.leq(iso[a], iso[b])
    assert lattice_iso(L, chain_lattice(4)) is None


@settings(max_examples=150, deadline=None)
@given(lattices())
def test_tables_match_oracle(L):
    meet, join = meet_join(leq_matrix(L))
    assert [list(r) for r in L.meet] == meet
    assert [list(r) for r in L.join] == join


@settings(max_examples=150, deadline=None)
@given(lattices())
def test_lattice_laws(L):
    r = range(L.n)
    for a in r:
        assert L.meet[a][a] == a and L.join[a][a] == a
        for b in r:
            assert L.meet[a][b] == L.meet[b][a]
            assert L.join[a][L.meet[a][b]] == a  # absorption
            assert L.leq(a, b) == (L.meet[a][b] == a) == (L.join[a][b] == b)


@settings(max_examples=150, deadline=None)
@given(lattices())
def test_flags_match_oracles(L):
    assert is_modular(L) == modular_by_triples(L) == (not has_sublattice(L, "N5"))
    assert is_distributive(L) == distributive_by_triples(L)
    assert is_distributive(L) == (is_modular(L) and not has_sublattice(L, "M3"))
    if is_distributive(L):
        assert is_modular(L)


@settings(max_examples=100, deadline=None)
@given(lattices())
def test_cover_round_trip(L):
    M = Lattice.from_covers(L.names, L.cover_labels())
    assert M.down == L.down
    assert set(L.covers) == cover_pairs(leq_matrix(L))


@settings(max_examples=100, deadline=None)
@given(lattices())
def test_maximal_chains_oracle(L):
    assert [list(c) for c in maximal_chains(L)] == sorted(maximal_chains_oracle(L))


@settings(max_examples=100, deadline=None)
@given(lattices())
def test_modular_chains_have_equal_length(L):
    if is_modular(L):
        assert len({len(c) for c in maximal_chains(L)}) == 1


@given(st.integers(1, 6), st.integers(1, 6))
def test_product_size(a, b):
    assert product(chain_lattice(a), chain_lattice(b)).n == a * b
