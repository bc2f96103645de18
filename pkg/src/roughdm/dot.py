"""Hasse diagrams in Graphviz DOT.

Nodes appear in canonical element order and edges in lexicographic index
order, so output is byte-stable.  Complemented elements are filled,
completion-added elements are boxes, highlighted elements get a double outline.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

import numpy as np

from .relations import Universe
from .rough import RoughPair


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def covers_from_order(leq: np.ndarray) -> list[tuple[int, int]]:
    strict = leq & ~np.eye(len(leq), dtype=bool)
    s = strict.astype(np.int32)
    cover = strict & ~((s @ s) > 0)
    return [(int(i), int(j)) for i, j in np.argwhere(cover)]


def hasse_dot(elements: Sequence[RoughPair], leq, universe: Universe, *,
              name: str = "lattice",
              filled: Iterable[int] = (),
              boxed: Iterable[int] = (),
              highlighted: Iterable[int] = ()) -> str:
    leq = np.asarray(leq, dtype=bool)
    filled, boxed, highlighted = set(filled), set(boxed), set(highlighted)
    out = [f"digraph {_quote(name)} {{", "  rankdir=BT;",
           '  node [shape=ellipse, fontname="Helvetica"];', "  edge [arrowhead=none];"]
    for k, p in enumerate(elements):
        attrs = [f"label={_quote(p.format(universe))}"]
        if k in boxed:
            attrs.append("shape=box")
        if k in filled:
            attrs.append('style=filled, fillcolor="gray75"')
        if k in highlighted:
            attrs.append("peripheries=2")
        out.append(f"  n{k} [{', '.join(attrs)}];")
    for i, j in covers_from_order(leq):
        out.append(f"  n{i} -> n{j};")
    out.append("}")
    return "\n".join(out) + "\n"


def lattice_dot(lat, universe: Universe, *, name: str = "dm",
                complemented: Optional[Iterable[int]] = None,
                highlighted: Iterable[int] = ()) -> str:
    from .kleene import complemented_mask
    if complemented is None:
        complemented = np.flatnonzero(complemented_mask(lat))
    added = getattr(lat, "added", [])
    return hasse_dot(lat.elements, lat.leq, universe, name=name,
                     filled=map(int, complemented), boxed=added, highlighted=highlighted)
