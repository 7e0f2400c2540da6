from __future__ import annotations

from importlib.resources import files

import pytest
from hypothesis import strategies as st

from distlat.generate import closure_lattice
from distlat.io import load_lattice

DATA = files("distlat") / "data"
LATTICE_FILES = ["chain3.json", "b2.json", "b3.json", "m3.json", "n5.json", "d2.json", "d3.json", "uniserial3.json"]

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def corpus():
    return {name: load_lattice(DATA / name) for name in LATTICE_FILES}


@st.composite
def lattices(draw, max_ground: int = 5):
    """Arbitrary finite lattices: every one is an intersection-closed set family."""
    ground = draw(st.integers(1, max_ground))
    gens = draw(st.lists(st.integers(0, (1 << ground) - 1), max_size=6))
    return closure_lattice(ground, gens)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
