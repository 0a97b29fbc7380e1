"""Explicit orientations and colourings: rigid orientations, the C6 catalogue, K_{n,n} colourings."""

from __future__ import annotations

from dataclasses import dataclass

from .automorphism import is_distinguishing, is_rigid
from .bipartite_words import rigid_orientation_exists, staircase_orientation
from .config import Caps, InvalidInputError, resolve
from .graph_core import (
    ARC,
    VERTEX,
    Labelling,
    OrientedGraph,
    UndirectedGraph,
    build_family,
    is_proper,
    orient,
)
from .latin import (
    LatinSquare,
    apply_isotopy,
    cyclic_square,
    exhaustive_asymmetric,
    find_asymmetric_latin_square,
    find_autotopism,
    is_asymmetric_latin,
    is_autotopism,
    random_square,
    reduced_squares,
)


def rigid_orientation(spec: str, caps: Caps | None = None, budget: int = 200_000) -> OrientedGraph:
    """A rigid orientation of ``path:n``, ``cycle:n``, ``complete:n`` or ``biclique:m,n``.

    Paths become directed paths, complete graphs transitive tournaments, and
    cycles the directed cycle with the closing arc reversed; all three are the
    all-zero mask in canonical edge order. Balanced bicliques get the staircase
    orientation; unbalanced ones go through the word-set constructions.
    """
    caps = resolve(caps)
    g = build_family(spec, caps)
    tag = spec.split(":", 1)[0]
    if tag in ("path", "cycle", "complete"):
        og = orient(g, "0" * g.n_edges)
    elif tag in ("biclique", "star"):
        m, n = g.parts
        if m == n:
            og = staircase_orientation(n, caps)
        else:
            result = rigid_orientation_exists(m, n, budget, caps)
            if result.witness is None:
                raise InvalidInputError(f"{spec}: no rigid orientation ({result.status}: {result.reason})")
            if (m, n) != result.witness.parts:
                raise InvalidInputError(f"{spec}: write the smaller part first")
            og = OrientedGraph(g.n_vertices, result.witness.arcs, g.family_tag, g.parts)
    else:
        raise InvalidInputError(f"no rigid-orientation construction for {spec!r}")
    if not is_rigid(og, caps):
        raise AssertionError(f"construction for {spec} is not rigid")
    return og


@dataclass(frozen=True)
class CatalogEntry:
    orientation: OrientedGraph
    vertex_colouring: Labelling
    arc_colouring: Labelling


# C6 with vertices A..F = 0..5 and canonical edges AB, AF, BC, CD, DE, EF.
_C6_EDGES = ((0, 1), (0, 5), (1, 2), (2, 3), (3, 4), (4, 5))
_C6_ENTRIES = (
    # arcs in cyclic order AB, BC, CD, DE, EF, FA; vertex colours; arc colours in the same cyclic order
    (((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)), (1, 2, 3, 2, 3, 2), (1, 2, 3, 2, 3, 2)),
    (((0, 1), (2, 1), (2, 3), (4, 3), (4, 5), (0, 5)), (1, 2, 3, 1, 2, 3), (1, 2, 3, 1, 2, 3)),
    (((0, 1), (1, 2), (2, 3), (4, 3), (5, 4), (0, 5)), (1, 2, 3, 1, 2, 3), (1, 2, 1, 2, 1, 2)),
    (((0, 1), (1, 2), (3, 2), (3, 4), (5, 4), (0, 5)), (1, 2, 3, 1, 2, 3), (1, 2, 1, 2, 1, 2)),
)


def cycle6_catalog(caps: Caps | None = None) -> list[CatalogEntry]:
    """The four non-rigid orientations of C6 with 3-label proper distinguishing colourings."""
    g = build_family("cycle:6")
    out = []
    for cyclic_arcs, vcols, acols in _C6_ENTRIES:
        by_edge = {(min(a), max(a)): (a, c) for a, c in zip(cyclic_arcs, acols)}
        og = OrientedGraph(6, tuple(by_edge[e][0] for e in _C6_EDGES), g.family_tag)
        arc_lab = Labelling(ARC, tuple(by_edge[e][1] for e in _C6_EDGES), 3)
        vertex_lab = Labelling(VERTEX, vcols, 3)
        for lab in (vertex_lab, arc_lab):
            if not (is_proper(og, lab) and is_distinguishing(og, lab, caps)):
                raise AssertionError("catalogue colouring fails verification")
        out.append(CatalogEntry(og, vertex_lab, arc_lab))
    return out


def modular_arc_colouring(n: int) -> Labelling:
    """Arc x_i y_j (1-based) gets ((i + j) mod (n + 1)) + 1; works for every orientation of K_{n,n}."""
    if not 3 <= n <= 6:
        raise InvalidInputError("the modular colouring is provided for 3 <= n <= 6")
    labels = tuple((i + j) % (n + 1) + 1 for i in range(1, n + 1) for j in range(1, n + 1))
    return Labelling(ARC, labels, n + 1)


def latin_to_arc_colouring(L: LatinSquare, og: OrientedGraph | UndirectedGraph) -> Labelling:
    """Arc x_i y_j gets the symbol in row i, column j."""
    if og.parts != (L.n, L.n):
        raise InvalidInputError(f"need an orientation of K_{{{L.n},{L.n}}}")
    return Labelling(ARC, tuple(L.cells[i][j] for i in range(L.n) for j in range(L.n)), L.n)


def all_out_biclique(m: int, n: int, caps: Caps | None = None) -> OrientedGraph:
    """Every arc from X to Y."""
    g = build_family(f"biclique:{m},{n}", caps)
    return orient(g, "0" * g.n_edges)


__all__ = [
    "CatalogEntry",
    "LatinSquare",
    "all_out_biclique",
    "apply_isotopy",
    "cycle6_catalog",
    "cyclic_square",
    "exhaustive_asymmetric",
    "find_asymmetric_latin_square",
    "find_autotopism",
    "is_asymmetric_latin",
    "is_autotopism",
    "latin_to_arc_colouring",
    "modular_arc_colouring",
    "random_square",
    "reduced_squares",
    "rigid_orientation",
]
