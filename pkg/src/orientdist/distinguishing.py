"""Distinguishing numbers and indices, plain and proper, for one orientation or over all of them.

The labelling search assigns labels element by element (vertices or arcs in
index order), lowest label first, with labels introduced in first-use order.
For every non-trivial automorphism it tracks whether some already-decided pair
``(e, π(e))`` got different labels; an automorphism whose moved elements are
all labelled without being broken survives every completion, so the branch is
cut there. The first complete labelling found is the lexicographically
smallest one with at most ``r`` labels.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .automorphism import (
    Permutation,
    arc_permutation,
    automorphisms,
    edge_permutation,
    graph_automorphisms,
    identity,
    is_distinguishing,
    is_graph_distinguishing,
)
from .config import Caps, InvalidInputError, ResourceCapError, resolve
from .graph_core import (
    ARC,
    VERTEX,
    Labelling,
    OrientationMask,
    OrientedGraph,
    UndirectedGraph,
    biclique,
    enumerate_orientations,
    is_proper,
)


class Kind(str, enum.Enum):
    OD = "OD"
    OCHID = "OchiD"
    ODP = "ODp"
    OCHIDP = "OchiDp"

    @property
    def target(self) -> str:
        return ARC if self in (Kind.ODP, Kind.OCHIDP) else VERTEX

    @property
    def proper(self) -> bool:
        return self in (Kind.OCHID, Kind.OCHIDP)

    @classmethod
    def parse(cls, text: "str | Kind") -> "Kind":
        if isinstance(text, Kind):
            return text
        for k in cls:
            if k.value.lower() == str(text).lower():
                return k
        raise InvalidInputError(f"unknown parameter {text!r}; choose from {[k.value for k in cls]}")


MIN = "min"
MAX = "max"


@dataclass(frozen=True)
class ExtremalResult:
    value: int
    witness_mask: OrientationMask
    witness_labelling: Labelling
    orientations_scanned: int


# ---------------------------------------------------------------------------
# labelling search
# ---------------------------------------------------------------------------


class LabellingSearch:
    """Existence of distinguishing labellings for a fixed element-permutation group.

    ``perms`` are the non-trivial permutations of the labelled elements that
    must be broken; ``conflicts`` lists, per element, the lower-indexed
    elements it must differ from (empty lists for non-proper kinds).
    """

    def __init__(
        self,
        target: str,
        n_elements: int,
        perms: Iterable[Permutation],
        conflicts: Sequence[Sequence[int]] | None = None,
        caps: Caps | None = None,
    ) -> None:
        self.target = target
        self.n = n_elements
        ident = identity(n_elements)
        self.perms = sorted({tuple(p) for p in perms} - {ident})
        self.conflicts = [tuple(c) for c in conflicts] if conflicts else [()] * n_elements
        self.caps = resolve(caps)
        checks: list[list[tuple[int, int]]] = [[] for _ in range(n_elements)]
        closes: list[list[int]] = [[] for _ in range(n_elements)]
        for k, p in enumerate(self.perms):
            moved = [e for e in range(n_elements) if p[e] != e]
            closes[max(moved)].append(k)
            for e in moved:
                q = p[e]
                if q < e:
                    checks[e].append((k, q))  # pair (e, p(e)) decided once e is labelled
            for e in moved:
                if e < p[e]:
                    checks[p[e]].append((k, e))  # pair (e, p(e)) seen from its image
        self.checks = [tuple(c) for c in checks]
        self.closes = [tuple(c) for c in closes]
        self.nodes = 0

    def find(self, r: int) -> Labelling | None:
        if r < 1:
            raise InvalidInputError("r must be at least 1")
        n = self.n
        if n == 0:
            return Labelling(self.target, (), 1) if not self.perms else None
        self.nodes = 0
        labels = [0] * n
        broken = [-1] * len(self.perms)
        checks, closes, conflicts = self.checks, self.closes, self.conflicts
        budget = self.caps.labelling_nodes

        def rec(d: int, used: int) -> bool:
            if d == n:
                return True
            top = min(r, used + 1)
            forbidden = {labels[c] for c in conflicts[d]}
            for ell in range(1, top + 1):
                if ell in forbidden:
                    continue
                self.nodes += 1
                if self.nodes > budget:
                    raise ResourceCapError(f"labelling search exceeded {budget} nodes")
                labels[d] = ell
                newly = []
                for k, other in checks[d]:
                    if broken[k] < 0 and labels[other] != ell:
                        broken[k] = d
                        newly.append(k)
                if all(broken[k] >= 0 for k in closes[d]):
                    if rec(d + 1, max(used, ell)):
                        return True
                for k in newly:
                    broken[k] = -1
            labels[d] = 0
            return False

        if rec(0, 0):
            return Labelling(self.target, tuple(labels), r)
        return None


def _vertex_conflicts(n: int, pairs: Iterable[tuple[int, int]]) -> list[list[int]]:
    lower: list[list[int]] = [[] for _ in range(n)]
    for u, v in pairs:
        a, b = min(u, v), max(u, v)
        lower[b].append(a)
    return lower


def _arc_conflicts(pairs: Sequence[tuple[int, int]]) -> list[list[int]]:
    lower: list[list[int]] = [[] for _ in pairs]
    for i, (a, b) in enumerate(pairs):
        for j in range(i):
            if set(pairs[j]) & {a, b}:
                lower[i].append(j)
    return lower


def _search_for(og: OrientedGraph, kind: Kind, caps: Caps) -> LabellingSearch:
    group = automorphisms(og, caps)
    if kind.target == VERTEX:
        perms = group
        n = og.n_vertices
        conflicts = _vertex_conflicts(n, og.arcs) if kind.proper else None
    else:
        perms = [arc_permutation(og, p) for p in group]
        n = og.n_arcs
        conflicts = _arc_conflicts(og.arcs) if kind.proper else None
    return LabellingSearch(kind.target, n, perms, conflicts, caps)


def _graph_search_for(g: UndirectedGraph, kind: Kind, caps: Caps) -> LabellingSearch:
    group = graph_automorphisms(g, caps)
    if kind.target == VERTEX:
        perms = group
        n = g.n_vertices
        conflicts = _vertex_conflicts(n, g.edges) if kind.proper else None
    else:
        perms = [edge_permutation(g, p) for p in group]
        n = g.n_edges
        conflicts = _arc_conflicts(g.edges) if kind.proper else None
    return LabellingSearch(kind.target, n, perms, conflicts, caps)


def distinguishing_exists(
    og: OrientedGraph, kind: Kind | str, r: int, caps: Caps | None = None
) -> Labelling | None:
    """Lexicographically smallest distinguishing labelling with at most ``r`` labels, or None."""
    caps = resolve(caps)
    return _search_for(og, Kind.parse(kind), caps).find(r)


def lower_bound(g: UndirectedGraph, kind: Kind) -> int:
    if not kind.proper:
        return 1
    chi, chi_prime = classical_bounds(g)
    return max(1, chi if kind.target == VERTEX else chi_prime)


def _minimal(search: LabellingSearch, start: int, stop: int | None = None) -> tuple[int, Labelling] | None:
    """Smallest r in [start, stop) admitting a labelling (stop=None: unbounded)."""
    r = start
    while stop is None or r < stop:
        lab = search.find(r)
        if lab is not None:
            return r, lab
        if r > max(search.n, 1):
            raise AssertionError("distinct labels on every element must distinguish")
        r += 1
    return None


def parameter_value(
    og: OrientedGraph, kind: Kind | str, caps: Caps | None = None
) -> tuple[int, Labelling]:
    caps = resolve(caps)
    kind = Kind.parse(kind)
    search = _search_for(og, kind, caps)
    return _minimal(search, lower_bound(og.underlying(), kind))


def graph_parameter_value(
    g: UndirectedGraph, kind: Kind | str, caps: Caps | None = None
) -> tuple[int, Labelling]:
    """The undirected counterpart: D, χ_D, D′ or χ′_D for the oriented kind's target and properness."""
    caps = resolve(caps)
    kind = Kind.parse(kind)
    search = _graph_search_for(g, kind, caps)
    return _minimal(search, lower_bound(g, kind))


def extremal(
    g: UndirectedGraph,
    kind: Kind | str,
    direction: str,
    caps: Caps | None = None,
    start: int = 0,
    stop: int | None = None,
) -> ExtremalResult:
    """Min or max of a parameter over all orientations, smallest-mask witness.

    Reversing every arc complements the mask and keeps every parameter, so only
    masks whose first bit is 0 are evaluated; the smallest optimal mask always
    has that form. ``start``/``stop`` restrict to a mask range for partitioned runs.
    """
    caps = resolve(caps)
    kind = Kind.parse(kind)
    if direction not in (MIN, MAX):
        raise InvalidInputError(f"direction must be 'min' or 'max', not {direction!r}")
    m = g.n_edges
    half = 1 << max(m - 1, 0)
    stop = half if stop is None else min(stop, half)
    floor = lower_bound(g, kind)
    best: tuple[int, OrientationMask, Labelling] | None = None
    scanned = 0
    for mask, og in enumerate_orientations(g, caps, start, stop):
        scanned += 1
        search = _search_for(og, kind, caps)
        if best is None:
            value, lab = _minimal(search, floor)
            best = (value, mask, lab)
        elif direction == MIN:
            found = _minimal(search, floor, best[0])
            if found is not None:
                best = (found[0], mask, found[1])
        else:
            if search.find(best[0]) is None:
                value, lab = _minimal(search, best[0] + 1)
                best = (value, mask, lab)
        if direction == MIN and best[0] == floor:
            break
    if best is None:
        raise InvalidInputError("empty mask range")
    return ExtremalResult(best[0], best[1], best[2], scanned)


def merge_extremal(results: Sequence[ExtremalResult], direction: str) -> ExtremalResult:
    """Combine partition results; ties go to the smaller mask."""
    if direction == MIN:
        key = lambda res: (res.value, str(res.witness_mask))
    else:
        key = lambda res: (-res.value, str(res.witness_mask))
    best = min(results, key=key)
    return ExtremalResult(
        best.value, best.witness_mask, best.witness_labelling, sum(r.orientations_scanned for r in results)
    )


def check_witness(og: OrientedGraph, kind: Kind | str, lab: Labelling, caps: Caps | None = None) -> bool:
    kind = Kind.parse(kind)
    if lab.target != kind.target:
        return False
    if kind.proper and not is_proper(og, lab):
        return False
    return is_distinguishing(og, lab, caps)


def check_graph_witness(g: UndirectedGraph, kind: Kind | str, lab: Labelling, caps: Caps | None = None) -> bool:
    kind = Kind.parse(kind)
    if lab.target != kind.target:
        return False
    if kind.proper and not is_proper(g, lab):
        return False
    return is_graph_distinguishing(g, lab, caps)


# ---------------------------------------------------------------------------
# chromatic number and index
# ---------------------------------------------------------------------------


def _colourable(n: int, conflicts: Sequence[Sequence[int]], k: int) -> bool:
    colours = [0] * n

    def rec(d: int, used: int) -> bool:
        if d == n:
            return True
        forbidden = {colours[c] for c in conflicts[d]}
        for c in range(1, min(k, used + 1) + 1):
            if c not in forbidden:
                colours[d] = c
                if rec(d + 1, max(used, c)):
                    return True
        colours[d] = 0
        return False

    return rec(0, 0)


def chromatic_number(g: UndirectedGraph) -> int:
    conflicts = _vertex_conflicts(g.n_vertices, g.edges)
    k = 1
    while not _colourable(g.n_vertices, conflicts, k):
        k += 1
    return k


def chromatic_index(g: UndirectedGraph) -> int:
    if not g.edges:
        return 0
    conflicts = _arc_conflicts(g.edges)
    k = max(g.degree(u) for u in range(g.n_vertices))
    while not _colourable(g.n_edges, conflicts, k):
        k += 1
    return k


def classical_bounds(g: UndirectedGraph, caps: Caps | None = None) -> tuple[int, int]:
    caps = resolve(caps)
    if g.n_vertices > caps.max_search_vertices or g.n_edges > caps.max_search_vertices * 2:
        raise ResourceCapError("graph too large for the exact colouring solver")
    return chromatic_number(g), chromatic_index(g)


# ---------------------------------------------------------------------------
# distinguishing index of K_{m,n}, m < n
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Exact:
    value: int


@dataclass(frozen=True)
class Ambiguous:
    r: int  # the index is r or r + 1


def _ceil_log(base: int, x: int) -> int:
    """Smallest t >= 0 with base**t >= x, in exact integer arithmetic."""
    t, power = 0, 1
    while power < x:
        power *= base
        t += 1
    return t


def biclique_index_formula(m: int, n: int) -> Exact | Ambiguous:
    """Closed form for the distinguishing index of K_{m,n} with 2 <= m < n."""
    if m < 2 or m >= n:
        raise InvalidInputError("need 2 <= m < n")
    r = 2
    while r**m < n:
        r += 1
    gap = r**m - _ceil_log(r, m)
    if n <= gap - 1:
        return Exact(r)
    if n >= gap + 1:
        return Exact(r + 1)
    return Ambiguous(r)


def _column_set_rigid(columns: Sequence[tuple[int, ...]], row_perms: Sequence[Permutation]) -> bool:
    colset = set(columns)
    for alpha in row_perms:
        if all(tuple(c[alpha[i]] for i in range(len(c))) in colset for c in columns):
            return False
    return True


def biclique_index_brute_force(m: int, n: int) -> tuple[int, Labelling]:
    """Distinguishing index of K_{m,n}, m < n, by direct search over column sets.

    An edge labelling is an m×n matrix; it is distinguishing iff its columns are
    pairwise distinct and no non-identity row permutation maps the column set
    onto itself. Returns the value and the first witness found (as an edge
    labelling in canonical edge order).
    """
    if m < 1 or m >= n:
        raise InvalidInputError("need 1 <= m < n")
    row_perms = [p for p in permutations(range(m)) if p != tuple(range(m))]
    r = 1
    while True:
        alphabet = [tuple(w) for w in _words(m, r)]
        if len(alphabet) >= n:
            for cols in combinations(alphabet, n):
                if _column_set_rigid(cols, row_perms):
                    labels = tuple(cols[j][i] for i in range(m) for j in range(n))
                    return r, Labelling(ARC, labels, r)
        r += 1


def _words(m: int, r: int) -> Iterable[tuple[int, ...]]:
    if m == 0:
        yield ()
        return
    for head in range(1, r + 1):
        for tail in _words(m - 1, r):
            yield (head,) + tail


def biclique_index_generic(m: int, n: int, caps: Caps | None = None) -> int:
    """Same quantity through the general undirected solver (small cases only)."""
    return graph_parameter_value(biclique(m, n, caps), Kind.ODP, caps)[0]


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


__all__ = [
    "Ambiguous",
    "Exact",
    "ExtremalResult",
    "Kind",
    "LabellingSearch",
    "MAX",
    "MIN",
    "biclique_index_brute_force",
    "biclique_index_formula",
    "biclique_index_generic",
    "ceil_div",
    "check_graph_witness",
    "check_witness",
    "chromatic_index",
    "chromatic_number",
    "classical_bounds",
    "distinguishing_exists",
    "extremal",
    "graph_parameter_value",
    "lower_bound",
    "merge_extremal",
    "parameter_value",
]
