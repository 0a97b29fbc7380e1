"""Automorphism groups of small oriented and undirected graphs.

The search is a plain backtracker: vertices are first split by iterated
colour refinement on (label, out-degree, in-degree), then mapped one at a time
(fewest remaining candidates first) with forward checking on bitsets, so every
complete mapping is an automorphism by construction. Labels, when given, are
part of the structure being preserved, which turns "is this labelling
distinguishing?" into "does the labelled graph have a non-trivial automorphism?".

Twin-free orientations of K_{m,n} with m < n get a faster exact route: an
automorphism is determined by its action on X, so only permutations of X that
respect in-degree classes are tried and the Y-map is read off the words.
"""

from __future__ import annotations

from itertools import permutations, product
from typing import Iterable, Iterator, Mapping, Sequence

from .config import Caps, InvalidInputError, ResourceCapError, resolve
from .graph_core import (
    ARC,
    VERTEX,
    Labelling,
    OrientedGraph,
    UndirectedGraph,
    _bits,
)

Permutation = tuple[int, ...]


def identity(n: int) -> Permutation:
    return tuple(range(n))


def compose(p: Sequence[int], q: Sequence[int]) -> Permutation:
    """``(p∘q)(u) = p(q(u))``."""
    return tuple(p[q[u]] for u in range(len(q)))


def inverse(p: Sequence[int]) -> Permutation:
    inv = [0] * len(p)
    for u, w in enumerate(p):
        inv[w] = u
    return tuple(inv)


def format_permutation(p: Sequence[int]) -> str:
    return "[" + ",".join(str(x) for x in p) + "]"


def parse_permutation(text: str) -> Permutation:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise InvalidInputError(f"permutation must look like [p0,p1,...], got {text!r}")
    try:
        p = tuple(int(x) for x in body[1:-1].split(",") if x.strip())
    except ValueError:
        raise InvalidInputError(f"bad permutation {text!r}") from None
    _check_permutation(p, len(p))
    return p


def transposition(n: int, *pairs: tuple[int, int]) -> Permutation:
    p = list(range(n))
    for a, b in pairs:
        p[a], p[b] = p[b], p[a]
    return tuple(p)


def _check_permutation(p: Sequence[int], n: int) -> None:
    if len(p) != n:
        raise InvalidInputError(f"permutation has length {len(p)}, expected {n}")
    if sorted(p) != list(range(n)):
        raise InvalidInputError("not a bijection on 0..n-1")


def is_automorphism(og: OrientedGraph, p: Sequence[int]) -> bool:
    _check_permutation(p, og.n_vertices)
    return all(og.has_arc(p[t], p[h]) for t, h in og.arcs)


def is_graph_automorphism(g: UndirectedGraph, p: Sequence[int]) -> bool:
    _check_permutation(p, g.n_vertices)
    adj = g.adjacency
    return all((adj[p[u]] >> p[v]) & 1 for u, v in g.edges)


def arc_permutation(og: OrientedGraph, p: Sequence[int]) -> Permutation:
    """The permutation of arc indices induced by an automorphism ``p``."""
    try:
        return tuple(og.arc_index[(p[t], p[h])] for t, h in og.arcs)
    except KeyError:
        raise InvalidInputError("permutation is not an automorphism") from None


def edge_permutation(g: UndirectedGraph, p: Sequence[int]) -> Permutation:
    index = {e: i for i, e in enumerate(g.edges)}
    try:
        return tuple(index[(min(p[u], p[v]), max(p[u], p[v]))] for u, v in g.edges)
    except KeyError:
        raise InvalidInputError("permutation is not an automorphism") from None


# ---------------------------------------------------------------------------
# search engine
# ---------------------------------------------------------------------------


class _Structure:
    """Adjacency bitsets plus optional vertex colours and arc labels.

    Undirected graphs are passed with ``out_bits == in_bits``.
    """

    def __init__(
        self,
        n: int,
        out_bits: Sequence[int],
        in_bits: Sequence[int],
        vertex_labels: Sequence[int] | None = None,
        arc_labels: Mapping[tuple[int, int], int] | None = None,
    ) -> None:
        self.n = n
        self.out_bits = tuple(out_bits)
        self.in_bits = tuple(in_bits)
        self.arc_labels = arc_labels
        out_lab: list[dict[int, int]] = []
        in_lab: list[dict[int, int]] = []
        for w in range(n):
            o: dict[int, int] = {}
            for z in _bits(self.out_bits[w]):
                ell = self._label(w, z)
                o[ell] = o.get(ell, 0) | (1 << z)
            i: dict[int, int] = {}
            for z in _bits(self.in_bits[w]):
                ell = self._label(z, w)
                i[ell] = i.get(ell, 0) | (1 << z)
            out_lab.append(o)
            in_lab.append(i)
        self.out_lab = out_lab
        self.in_lab = in_lab
        # per vertex v: (u, out-label or None, in-label or None) for every other u
        rel = []
        for v in range(n):
            row = []
            for u in range(n):
                if u == v:
                    continue
                lo = self._label(v, u) if (self.out_bits[v] >> u) & 1 else None
                li = self._label(u, v) if (self.in_bits[v] >> u) & 1 else None
                row.append((u, lo, li))
            rel.append(row)
        self.rel = rel
        self.colours = _refine(self, list(vertex_labels) if vertex_labels is not None else [0] * n)

    def _label(self, t: int, h: int) -> int:
        if self.arc_labels is None:
            return 0
        if (t, h) in self.arc_labels:
            return self.arc_labels[(t, h)]
        return self.arc_labels[(h, t)]  # undirected edge stored the other way round


def _refine(s: _Structure, colours: list) -> list[int]:
    first = True
    while True:
        sigs = []
        for v in range(s.n):
            outs = sorted((s._label(v, u), colours[u]) for u in _bits(s.out_bits[v]))
            ins = sorted((s._label(u, v), colours[u]) for u in _bits(s.in_bits[v]))
            sigs.append((colours[v], tuple(outs), tuple(ins)))
        ranking = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        new = [ranking[sig] for sig in sigs]
        if not first and len(ranking) == len(set(colours)):
            return new
        colours, first = new, False


def _iter_automorphisms(s: _Structure) -> Iterator[Permutation]:
    n = s.n
    if n == 0:
        yield ()
        return
    classes: dict[int, int] = {}
    for v, c in enumerate(s.colours):
        classes[c] = classes.get(c, 0) | (1 << v)
    cand0 = [classes[s.colours[v]] for v in range(n)]
    mapping = [-1] * n
    out_bits, in_bits, out_lab, in_lab, rel = s.out_bits, s.in_bits, s.out_lab, s.in_lab, s.rel

    def rec(cand: list[int], remaining: int) -> Iterator[Permutation]:
        if not remaining:
            yield tuple(mapping)
            return
        v, best = -1, n + 1
        for u in _bits(remaining):
            c = cand[u].bit_count()
            if c < best:
                v, best = u, c
                if c <= 1:
                    break
        rest = remaining & ~(1 << v)
        for w in _bits(cand[v]):
            nonadj = ~(out_bits[w] | in_bits[w])
            ow, iw = out_lab[w], in_lab[w]
            clear = ~(1 << w)
            new = cand[:]
            ok = True
            for u, lo, li in rel[v]:
                if not (rest >> u) & 1:
                    continue
                c = new[u] & clear
                if lo is not None:
                    c &= ow.get(lo, 0)
                if li is not None:
                    c &= iw.get(li, 0)
                if lo is None and li is None:
                    c &= nonadj
                if not c:
                    ok = False
                    break
                new[u] = c
            if ok:
                mapping[v] = w
                yield from rec(new, rest)
        mapping[v] = -1

    yield from rec(cand0, (1 << n) - 1)


def _oriented_structure(og: OrientedGraph, lab: Labelling | None = None) -> _Structure:
    vertex_labels = arc_labels = None
    if lab is not None:
        lab.check_length(og)
        if lab.target == VERTEX:
            vertex_labels = lab.labels
        else:
            arc_labels = {a: lab.labels[i] for i, a in enumerate(og.arcs)}
    return _Structure(og.n_vertices, og.out_bits, og.in_bits, vertex_labels, arc_labels)


def _graph_structure(g: UndirectedGraph, lab: Labelling | None = None) -> _Structure:
    vertex_labels = arc_labels = None
    if lab is not None:
        lab.check_length(g)
        if lab.target == VERTEX:
            vertex_labels = lab.labels
        else:
            arc_labels = {e: lab.labels[i] for i, e in enumerate(g.edges)}
    adj = g.adjacency
    return _Structure(g.n_vertices, adj, adj, vertex_labels, arc_labels)


def _collect(perms: Iterable[Permutation], caps: Caps) -> list[Permutation]:
    out = []
    for p in perms:
        out.append(p)
        if len(out) > caps.max_group_size:
            raise ResourceCapError(f"automorphism group larger than {caps.max_group_size}")
    out.sort()  # identity is the lexicographically smallest permutation
    return out


# ---------------------------------------------------------------------------
# twin-free bicliques
# ---------------------------------------------------------------------------


def _biclique_codes(og: OrientedGraph) -> list[int] | None:
    """Word of each Y-vertex as an int (bit j set iff y -> x_j), or None if not twin-free with m < n."""
    if og.parts is None:
        return None
    m, n = og.parts
    if m >= n:
        return None
    codes = [og.out_bits[m + i] for i in range(n)]
    if len(set(codes)) != n:
        return None
    return codes


def _biclique_group(og: OrientedGraph, codes: list[int]) -> Iterator[Permutation]:
    m, n = og.parts
    x_classes: dict[int, list[int]] = {}
    for x in range(m):
        x_classes.setdefault(og.in_degree(x), []).append(x)
    groups = list(x_classes.values())
    where = {c: i for i, c in enumerate(codes)}
    for choice in product(*(permutations(grp) for grp in groups)):
        alpha = list(range(m))
        for grp, img in zip(groups, choice):
            for a, b in zip(grp, img):
                alpha[a] = b
        image = list(range(m))
        image[:m] = alpha
        ok = True
        for i, c in enumerate(codes):
            mapped = 0
            for x in _bits(c):
                mapped |= 1 << alpha[x]
            j = where.get(mapped)
            if j is None:
                ok = False
                break
            image.append(m + j)
        if ok:
            yield tuple(image)


def biclique_shortcut_applies(og: OrientedGraph) -> bool:
    return _biclique_codes(og) is not None


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def automorphisms(og: OrientedGraph, caps: Caps | None = None) -> list[Permutation]:
    """The full group as an explicit sorted list, identity first."""
    caps = resolve(caps)
    codes = _biclique_codes(og)
    if codes is not None and og.n_vertices <= caps.max_biclique_vertices:
        return _collect(_biclique_group(og, codes), caps)
    if og.n_vertices > caps.max_aut_vertices:
        raise ResourceCapError(
            f"{og.n_vertices} vertices exceeds the automorphism cap {caps.max_aut_vertices}"
        )
    return _collect(_iter_automorphisms(_oriented_structure(og)), caps)


def graph_automorphisms(g: UndirectedGraph, caps: Caps | None = None) -> list[Permutation]:
    """Automorphisms of the undirected graph (all edge-preserving bijections)."""
    caps = resolve(caps)
    if g.n_vertices > caps.max_aut_vertices:
        raise ResourceCapError(
            f"{g.n_vertices} vertices exceeds the automorphism cap {caps.max_aut_vertices}"
        )
    return _collect(_iter_automorphisms(_graph_structure(g)), caps)


def find_nontrivial_automorphism(
    og: OrientedGraph, lab: Labelling | None = None, caps: Caps | None = None
) -> Permutation | None:
    """Some non-trivial automorphism preserving ``lab`` (if given), else None.

    For arc labellings an automorphism counts as non-trivial only when it moves
    at least one arc.
    """
    caps = resolve(caps)
    if lab is None:
        codes = _biclique_codes(og)
        if codes is not None and og.n_vertices <= caps.max_biclique_vertices:
            ident = identity(og.n_vertices)
            return next((p for p in _biclique_group(og, codes) if p != ident), None)
    if og.n_vertices > caps.max_search_vertices:
        raise ResourceCapError(
            f"{og.n_vertices} vertices exceeds the search cap {caps.max_search_vertices}"
        )
    ident = identity(og.n_vertices)
    arc_ident = identity(og.n_arcs)
    for p in _iter_automorphisms(_oriented_structure(og, lab)):
        if p == ident:
            continue
        if lab is not None and lab.target == ARC and arc_permutation(og, p) == arc_ident:
            continue
        return p
    return None


def find_nontrivial_graph_automorphism(
    g: UndirectedGraph, lab: Labelling | None = None, caps: Caps | None = None
) -> Permutation | None:
    caps = resolve(caps)
    if g.n_vertices > caps.max_search_vertices:
        raise ResourceCapError(
            f"{g.n_vertices} vertices exceeds the search cap {caps.max_search_vertices}"
        )
    ident = identity(g.n_vertices)
    edge_ident = identity(g.n_edges)
    for p in _iter_automorphisms(_graph_structure(g, lab)):
        if p == ident:
            continue
        if lab is not None and lab.target == ARC and edge_permutation(g, p) == edge_ident:
            continue
        return p
    return None


def is_rigid(og: OrientedGraph, caps: Caps | None = None) -> bool:
    codes = _biclique_codes(og)
    if codes is not None:
        m = og.parts[0]
        if len({og.in_degree(x) for x in range(m)}) == m:
            return True  # X is fixed pointwise, and distinct words then fix Y
    return find_nontrivial_automorphism(og, None, caps) is None


def preserves_labelling(og: OrientedGraph, p: Sequence[int], lab: Labelling) -> bool:
    lab.check_length(og)
    if not is_automorphism(og, p):
        raise InvalidInputError("permutation is not an automorphism of the oriented graph")
    if lab.target == VERTEX:
        return all(lab.labels[p[u]] == lab.labels[u] for u in range(og.n_vertices))
    q = arc_permutation(og, p)
    return all(lab.labels[q[i]] == lab.labels[i] for i in range(og.n_arcs))


def is_distinguishing(og: OrientedGraph, lab: Labelling, caps: Caps | None = None) -> bool:
    return find_nontrivial_automorphism(og, lab, caps) is None


def is_graph_distinguishing(g: UndirectedGraph, lab: Labelling, caps: Caps | None = None) -> bool:
    return find_nontrivial_graph_automorphism(g, lab, caps) is None
