"""Acceptance criteria 1-9; each records one PASS/FAIL line for the terminal summary."""

from __future__ import annotations

import contextlib
import io
import json
import os
import time

import pytest

from conftest import ACCEPTANCE, DATA
from distlat.birkhoff import birkhoff_iso, downsets, join_irreducibles, poset_iso
from distlat.cli import main
from distlat.dedekind import brute_force_masks, count_Dn, dedekind_lattice, enumerate_Dn, verify_Dn_birkhoff
from distlat.ext import COUNTEREXAMPLE, _components, ext_graph, lemma_cow_checks, reconstruct_check
from distlat.factors import factor_classes, is_multiplicity_free
from distlat.generate import acyclic_quivers, all_posets, random_modular_lattices, thin_reps
from distlat.io import load_lattice
from distlat.lattice import is_distributive, is_modular, lattice_iso
from distlat.quiver import is_indecomposable, submodule_lattice, support_is_tree, verify_theorem_quiver
from lemmas import all_violations
from oracles import distributive_by_triples


def record(k: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[k] = (ok, detail)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def sweep5():
    return [downsets(P) for P in all_posets(5)]


def test_criterion_1_multiplicity_free_modular_is_distributive(corpus):
    start = time.perf_counter()
    pool = list(corpus.values()) + random_modular_lattices(500, max_size=12, seed=2024)
    violations = mf = 0
    for L in pool:
        modular = is_modular(L)
        if modular and is_multiplicity_free(L):
            mf += 1
            if not (is_distributive(L) and distributive_by_triples(L)):
                violations += 1
    elapsed = time.perf_counter() - start
    non_distributive = sum(not is_distributive(L) for L in pool)
    record(1, violations == 0 and elapsed < 10 and len(pool) >= 500,
           f"{len(pool)} lattices, {mf} multiplicity-free modular, {non_distributive} non-distributive, "
           f"{violations} violations, {elapsed:.2f}s")


def test_criterion_2_birkhoff_round_trips():
    start = time.perf_counter()
    failures = count = 0
    for P in all_posets(6):
        count += 1
        J = downsets(P)
        Q, _ = join_irreducibles(J)
        birkhoff_iso(J)  # raises IsoFailure on a bad map
        if poset_iso(Q, P) is None:
            failures += 1
        if lattice_iso(downsets(Q), J) is None:
            failures += 1
    elapsed = time.perf_counter() - start
    record(2, failures == 0 and elapsed < 60, f"{count} posets, {failures} failures, {elapsed:.2f}s")


def test_criterion_3_reconstruction_sweep(sweep5):
    start = time.perf_counter()
    counter = mismatched = edge_a = hyp_fails = 0
    for L in sweep5:
        for hyp in ("directed", "underlying"):
            v = reconstruct_check(L, hyp)
            counter += v.status == COUNTEREXAMPLE
            hyp_fails += v.status != "holds_with_iso"
            if v.underlying_acyclic and v.witness != v.canonical:
                mismatched += 1
        edge_a += not lemma_cow_checks(L).part_a
    elapsed = time.perf_counter() - start
    record(3, counter == mismatched == edge_a == 0 and elapsed < 60,
           f"{len(sweep5)} lattices, {counter} counterexamples, {mismatched} witness mismatches, "
           f"{edge_a} cover-to-edge failures, {hyp_fails} hypothesis misses, {elapsed:.2f}s")


def test_criterion_4_perspectivity_lemmas(sweep5):
    start = time.perf_counter()
    totals = {"transitivity": 0, "absorption": 0, "uniqueness": 0, "containment": 0}
    for L in sweep5:
        for k, v in all_violations(L).items():
            totals[k] += len(v)
    elapsed = time.perf_counter() - start
    record(4, not any(totals.values()) and elapsed < 60,
           ", ".join(f"{k} {v}" for k, v in totals.items()) + f" violations, {elapsed:.2f}s")


def test_criterion_5_quiver_theorem():
    start = time.perf_counter()
    trees = failures = disconnected = indec = 0
    for Q in acyclic_quivers(4, 4):
        for M in thin_reps(Q):
            if not is_indecomposable(Q, M):
                continue
            indec += 1
            if len(_components(ext_graph(submodule_lattice(Q, M)).graph)) != 1:
                disconnected += 1
            if support_is_tree(Q, M):
                trees += 1
                if verify_theorem_quiver(Q, M).status != "equal":
                    failures += 1
    elapsed = time.perf_counter() - start
    record(5, failures == disconnected == 0 and elapsed < 120,
           f"{indec} indecomposable, {trees} tree-supported, {failures} not equal, "
           f"{disconnected} disconnected, {elapsed:.2f}s")


def test_criterion_6_dedekind_numbers():
    expected = [2, 3, 6, 20, 168, 7581, 7828354]
    counts = [count_Dn(n) for n in range(6)]
    brute = [len(brute_force_masks(n)) for n in range(5)]
    start = time.perf_counter()
    six = count_Dn(6)
    single = time.perf_counter() - start
    start = time.perf_counter()
    six_par = count_Dn(6, workers=os.cpu_count() or 4)
    parallel = time.perf_counter() - start
    ok = (counts + [six] == expected and brute == expected[:5] and len(enumerate_Dn(5)) == 7581
          and six_par == six and single < 30 and parallel < 10)
    record(6, ok, f"counts {counts + [six]}, n=6 single {single:.2f}s, parallel {parallel:.2f}s")


def test_criterion_7_dedekind_structure():
    verdicts = [verify_Dn_birkhoff(n) for n in range(5)]
    lattices_ok = all(is_distributive(L) and is_multiplicity_free(L)
                      for L in map(dedekind_lattice, range(4)))
    record(7, all(v.ok for v in verdicts) and lattices_ok,
           f"verify n=0..4 {[v.ok for v in verdicts]}, D_0..D_3 distributive and multiplicity-free {lattices_ok}")


@pytest.mark.slow
def test_criterion_7_slow_tier():
    L = dedekind_lattice(4)
    assert is_distributive(L) and is_multiplicity_free(L)


def test_criterion_8_three_chain_fixture():
    L = load_lattice(DATA / "uniserial3.json")
    data = json.loads((DATA / "uniserial3.json").read_text())
    fm = factor_classes(L)
    named = {fm[(L.index(hi), L.index(lo))]: name for name, (lo, hi) in data["factors"].items()}
    G = ext_graph(L).graph
    edges = {(named[s], named[t]) for s, t in G.edges}
    ring = {tuple(e) for e in data["ring_ext"]}
    is_chain = L.n == 3 and all(len(c) <= 1 for c in L.upper_covers)
    ok = (is_chain and len(edges) == 1 and {x for e in edges for x in e} == {"V+", "V-"}
          and ring == {("V+", "V-"), ("V-", "V+")})
    record(8, ok, f"3-chain {is_chain}, lattice Ext edges {sorted(edges)}, ring-level edges {sorted(ring)}")


def test_criterion_9_fixtures_run():
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["fixtures", "run"])
    summary = buf.getvalue().strip().splitlines()[-1]
    record(9, code == 0, f"exit {code}, {summary}")
