from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from distlat.birkhoff import boolean_poset, join_irreducibles, poset_iso
from distlat.dedekind import (AntichainFn, brute_force_masks, count_Dn, dedekind_lattice, enumerate_Dn,
                              generated_closure, is_monotone, principal, verify_Dn_birkhoff)
from distlat.errors import NTooLarge
from distlat.factors import is_multiplicity_free
from distlat.lattice import is_distributive
from oracles import monotone_count

DEDEKIND = [2, 3, 6, 20, 168, 7581, 7828354]


def test_small_enumerations():
    assert [str(f) for f in enumerate_Dn(0)] == ["0", "1"]
    assert [str(f) for f in enumerate_Dn(1)] == ["0", "{1}", "1"]
    assert [str(f) for f in enumerate_Dn(2)] == ["0", "{1,2}", "{1}", "{2}", "{1}|{2}", "1"]


@pytest.mark.parametrize("n", range(4))
def test_counts_against_pure_python(n):
    assert count_Dn(n) == monotone_count(n) == DEDEKIND[n]


@pytest.mark.parametrize("n", range(5))
def test_enumeration_matches_numpy_filter(n):
    assert [f.upset for f in enumerate_Dn(n)] == sorted(
        map(int, brute_force_masks(n)), key=lambda m: (m.bit_count(), m))


def test_count_five_and_six():
    assert count_Dn(5) == len(enumerate_Dn(5)) == 7581
    assert count_Dn(6) == 7828354
    assert count_Dn(6, workers=4, chunk=500) == 7828354


@pytest.mark.parametrize("fn,n", [(enumerate_Dn, 6), (count_Dn, 7), (dedekind_lattice, 5),
                                  (verify_Dn_birkhoff, -1), (brute_force_masks, 5)])
def test_range_checks(fn, n):
    with pytest.raises(NTooLarge):
        fn(n)


def test_antichain_rendering():
    f = AntichainFn(3, principal(3, 1).upset & principal(3, 2).upset | principal(3, 3).upset)
    assert str(f) == "{3}|{1,2}" or str(f) == "{1,2}|{3}"
    assert f.minimal_sets() == sorted(f.minimal_sets())


def test_principals_and_closure():
    for n in range(1, 4):
        fns = generated_closure(n)
        assert all(is_monotone(f.upset, n) for f in fns)
        # constants are adjoined, not generated
        assert len(fns) == len(enumerate_Dn(n)) - 2


def test_lattice_shapes():
    L = dedekind_lattice(1)
    assert L.names == ("0", "{1}", "1")
    L = dedekind_lattice(2)
    P, _ = join_irreducibles(L)
    assert sorted(P.names) == sorted(["1", "{1}", "{2}", "{1,2}"])
    assert poset_iso(P, boolean_poset(2)) is not None


@pytest.mark.parametrize("n", range(4))
def test_lattice_is_distributive_and_mf(n):
    L = dedekind_lattice(n)
    assert is_distributive(L) and is_multiplicity_free(L)


@pytest.mark.slow
def test_d4_is_distributive_and_mf():
    L = dedekind_lattice(4)
    assert L.n == 168 and is_distributive(L) and is_multiplicity_free(L)


@pytest.mark.parametrize("n,size", [(0, 2), (1, 3), (2, 6), (3, 20), (4, 168)])
def test_verify(n, size):
    v = verify_Dn_birkhoff(n)
    assert v.ok and v.size == v.downset_count == size
    assert v.to_dict()["problem"] is None


@given(st.integers(0, 3).flatmap(lambda n: st.tuples(st.just(n), st.sampled_from(enumerate_Dn(n)),
                                                     st.sampled_from(enumerate_Dn(n)))))
def test_meet_join_are_monotone_and_bounds(args):
    n, f, g = args
    for h in (f & g, f | g):
        assert is_monotone(h.upset, n)
    assert (f & g) <= f and f <= (f | g)
    assert (f <= g) == ((f & g) == f)
