"""Finite lattice workbench."""

from __future__ import annotations

from .birkhoff import (Digraph, Poset, antichain_poset, birkhoff_iso, boolean_poset, chain_poset,
                       cover_digraph, digraph_iso, downsets, join_irreducibles, poset_iso)
from .dedekind import (AntichainFn, count_Dn, dedekind_lattice, enumerate_Dn, generated_closure,
                       verify_Dn_birkhoff)
from .errors import *  # noqa: F401,F403
from .ext import (COUNTEREXAMPLE, HOLDS, HYPOTHESIS_FAILS, ExtGraph, Verdict, decompose, ext_graph,
                  is_acyclic, lemma_cow_checks, reconstruct_check, underlying_graph_acyclic)
from .factors import CoverInterval, FactorMap, down_arrow, factor_classes, interval_factors, is_multiplicity_free
from .io import emit_dot, load_lattice, load_poset, load_quiver, load_rep, order_to_json
from .lattice import Lattice, chain_lattice, is_distributive, is_modular, lattice_iso, maximal_chains, product
from .quiver import (Arrow, Quiver, RepairWarning, ThinRep, class_vertex_map, ext_R_induced, is_indecomposable,
                     make_rep, parse_quiver, parse_rep, submodule_lattice, verify_theorem_quiver)

__version__ = "0.1.0"
