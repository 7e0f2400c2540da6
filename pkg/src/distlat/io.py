"""File formats and Graphviz output.

Lattices and posets are JSON objects ``{"elements": [...], "covers": [[lower, upper], ...]}``;
an optional ``"format"`` key is ignored on input. Quivers and representations
use the line format documented in :mod:`distlat.quiver`, or JSON.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping

from .birkhoff import Digraph, Poset
from .errors import ParseError, SizeLimit
from .lattice import Lattice
from .limits import cap
from .quiver import Quiver, ThinRep, make_rep, parse_quiver, parse_rep

FORMAT_VERSION = 1
MAX_DOT_NODES = 500
PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
           "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"]


def order_to_json(X: Lattice | Poset) -> dict:
    return {"elements": list(X.names), "covers": [list(c) for c in X.cover_labels()]}


def _parse_order(data: dict) -> tuple[list[str], list[tuple[str, str]]]:
    try:
        names = [str(x) for x in data["elements"]]
        covers = [(str(lo), str(hi)) for lo, hi in data.get("covers", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed order description: {exc}") from None
    unknown = {x for pair in covers for x in pair} - set(names)
    if unknown:
        raise ParseError(f"cover pair references unknown element {sorted(unknown)[0]!r}")
    return names, covers


def lattice_from_json(data: dict) -> Lattice:
    return Lattice.from_covers(*_parse_order(data))


def poset_from_json(data: dict) -> Poset:
    return Poset.from_covers(*_parse_order(data))


def _read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", exc.lineno, exc.colno) from None


def load_lattice(path) -> Lattice:
    return lattice_from_json(_read_json(path))


def load_poset(path) -> Poset:
    return poset_from_json(_read_json(path))


def format_json(obj: dict) -> str:
    """One top-level key per line; values stay compact."""
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in obj.items())
    return "{\n" + body + "\n}\n"


def dump_json(obj: dict, path) -> None:
    Path(path).write_text(format_json(obj))


def load_quiver(path) -> Quiver:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        try:
            return Quiver.from_json(json.loads(text))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"{path}: {exc}") from None
    return parse_quiver(text)


def load_rep(path, Q: Quiver) -> ThinRep:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        data = json.loads(text)
        return make_rep(Q, data.get("support", []), data.get("nonzero", []))
    return parse_rep(text, Q)


def _q(s: str) -> str:
    return '"{}"'.format(str(s).replace("\\", "\\\\").replace('"', r"\""))


def emit_dot(obj: Lattice | Poset | Digraph, edge_classes: Mapping[tuple[int, int], int] | None = None,
             name: str = "G") -> str:
    """Graphviz text for a Hasse diagram (lattice or poset) or a digraph.

    Hasse diagrams run bottom to top with one rank per height and undirected-looking
    edges; ``edge_classes`` maps ``(lower, upper)`` covers to a colour index.
    """
    n = obj.n
    if n > cap(MAX_DOT_NODES):
        raise SizeLimit(f"{n} nodes exceed the DOT output cap")
    if isinstance(obj, Digraph):
        lines = [f"digraph {name} {{"]
        lines += [f"  {_q(v)};" for v in obj.vertices]
        lines += [f"  {_q(obj.vertices[s])} -> {_q(obj.vertices[t])};" for s, t in sorted(obj.edges)]
        lines.append("}")
        return "\n".join(lines) + "\n"

    if isinstance(obj, Lattice):
        height = obj.height
    else:
        height = [0] * n
        for x in sorted(range(n), key=lambda i: obj.down[i].bit_count()):
            height[x] = max((height[lo] + 1 for lo, hi in obj.covers if hi == x), default=0)
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  edge [dir=none];"]
    lines += [f"  {_q(v)};" for v in obj.names]
    for h in sorted(set(height)):
        same = " ".join(_q(obj.names[x]) + ";" for x in range(n) if height[x] == h)
        lines.append(f"  {{rank=same; {same}}}")
    for lo, hi in obj.covers:
        attr = ""
        if edge_classes is not None and (lo, hi) in edge_classes:
            cls = edge_classes[(lo, hi)]
            attr = f' [color="{PALETTE[cls % len(PALETTE)]}", label="{cls}"]'
        lines.append(f"  {_q(obj.names[lo])} -> {_q(obj.names[hi])}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
