"""Base graphs, orientations as edge bitmasks, and orientation enumeration.

Vertices are ``0..n-1``. Edges are stored as ``(u, v)`` with ``u < v`` in
lexicographic order; an orientation mask has one bit per edge, bit ``False``
meaning the arc runs from the lower to the higher endpoint. For
``biclique:m,n`` the vertices ``0..m-1`` form part X and ``m..m+n-1`` part Y,
so the edge order is x-index first, then y-index.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

from .config import Caps, InvalidInputError, ResourceCapError, resolve

Edge = tuple[int, int]
Arc = tuple[int, int]


@dataclass(frozen=True)
class UndirectedGraph:
    n_vertices: int
    edges: tuple[Edge, ...]
    family_tag: str | None = None
    parts: tuple[int, int] | None = None  # (|X|, |Y|) for bicliques

    def __post_init__(self) -> None:
        if self.n_vertices < 1:
            raise InvalidInputError("a graph needs at least one vertex")
        prev = None
        for u, v in self.edges:
            if not (0 <= u < v < self.n_vertices):
                raise InvalidInputError(f"edge {(u, v)} is not a pair u<v of vertices")
            if prev is not None and (u, v) <= prev:
                raise InvalidInputError("edges must be strictly increasing")
            prev = (u, v)
        if self.parts is not None:
            m, n = self.parts
            expected = tuple((x, m + y) for x in range(m) for y in range(n))
            if m + n != self.n_vertices or self.edges != expected:
                raise InvalidInputError("biclique parts do not match the edge set")

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def adjacency(self) -> tuple[int, ...]:
        adj = [0] * self.n_vertices
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    def degree(self, u: int) -> int:
        return self.adjacency[u].bit_count()


@dataclass(frozen=True)
class OrientationMask:
    bits: tuple[bool, ...]

    @classmethod
    def from_str(cls, text: str) -> "OrientationMask":
        if any(c not in "01" for c in text):
            raise InvalidInputError(f"orientation must be a 0/1 string, got {text!r}")
        return cls(tuple(c == "1" for c in text))

    @classmethod
    def from_int(cls, value: int, length: int) -> "OrientationMask":
        # first bit is the most significant, so integer order = string order
        return cls(tuple(bool((value >> (length - 1 - i)) & 1) for i in range(length)))

    def __str__(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def complement(self) -> "OrientationMask":
        return OrientationMask(tuple(not b for b in self.bits))


@dataclass(frozen=True)
class OrientedGraph:
    """A fixed orientation. ``arcs[i]`` orients ``edges[i]`` of the base graph."""

    n_vertices: int
    arcs: tuple[Arc, ...]
    family_tag: str | None = None
    parts: tuple[int, int] | None = None
    out_bits: tuple[int, ...] = field(init=False, repr=False, compare=False)
    in_bits: tuple[int, ...] = field(init=False, repr=False, compare=False)
    arc_index: dict[Arc, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        out = [0] * self.n_vertices
        inn = [0] * self.n_vertices
        index: dict[Arc, int] = {}
        for i, (t, h) in enumerate(self.arcs):
            if not (0 <= t < self.n_vertices and 0 <= h < self.n_vertices) or t == h:
                raise InvalidInputError(f"bad arc {(t, h)}")
            if (t, h) in index or (h, t) in index:
                raise InvalidInputError(f"arc {(t, h)} duplicates or opposes another arc")
            index[(t, h)] = i
            out[t] |= 1 << h
            inn[h] |= 1 << t
        object.__setattr__(self, "out_bits", tuple(out))
        object.__setattr__(self, "in_bits", tuple(inn))
        object.__setattr__(self, "arc_index", index)

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)

    def out_degree(self, u: int) -> int:
        return self.out_bits[u].bit_count()

    def in_degree(self, u: int) -> int:
        return self.in_bits[u].bit_count()

    def out_neighbours(self, u: int) -> frozenset[int]:
        return frozenset(_bits(self.out_bits[u]))

    def in_neighbours(self, u: int) -> frozenset[int]:
        return frozenset(_bits(self.in_bits[u]))

    def has_arc(self, u: int, v: int) -> bool:
        return bool((self.out_bits[u] >> v) & 1)

    def underlying(self) -> UndirectedGraph:
        edges = tuple(sorted((min(a), max(a)) for a in self.arcs))
        return UndirectedGraph(self.n_vertices, edges, self.family_tag, self.parts)

    def mask(self) -> OrientationMask:
        """Mask relative to the canonical edge order (arcs must already be in it)."""
        return OrientationMask(tuple(t > h for t, h in self.arcs))


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


_FAMILY_RE = re.compile(r"^(path|cycle|complete|star|biclique):(\d+)(?:,(\d+))?$")


def build_family(spec: str, caps: Caps | None = None) -> UndirectedGraph:
    """Build ``path:n``, ``cycle:n``, ``complete:n``, ``star:n``, ``biclique:m,n`` or ``file:PATH``."""
    caps = resolve(caps)
    spec = spec.strip()
    if spec.startswith("file:"):
        return read_edge_list(spec[5:], caps)
    match = _FAMILY_RE.match(spec)
    if not match:
        raise InvalidInputError(f"malformed family spec {spec!r}")
    name, a, b = match.group(1), int(match.group(2)), match.group(3)
    if (name == "biclique") != (b is not None):
        raise InvalidInputError(f"malformed family spec {spec!r}")
    minimum = {"path": 2, "cycle": 3, "complete": 1, "star": 1, "biclique": 1}[name]
    if a < minimum or (b is not None and int(b) < 1):
        raise InvalidInputError(f"{spec!r}: parameter below minimum for {name}")
    if name == "star":
        return _biclique(1, a, caps, tag=spec)
    if name == "biclique":
        return _biclique(a, int(b), caps, tag=spec)
    _check_vertices(a, caps)
    if name == "path":
        edges = [(i, i + 1) for i in range(a - 1)]
    elif name == "cycle":
        edges = [(i, i + 1) for i in range(a - 1)] + [(0, a - 1)]
    else:
        edges = [(u, v) for u in range(a) for v in range(u + 1, a)]
    return UndirectedGraph(a, tuple(sorted(edges)), spec)


def biclique(m: int, n: int, caps: Caps | None = None) -> UndirectedGraph:
    return _biclique(m, n, resolve(caps), tag=f"biclique:{m},{n}")


def _biclique(m: int, n: int, caps: Caps, tag: str) -> UndirectedGraph:
    _check_vertices(m + n, caps)
    edges = tuple((x, m + y) for x in range(m) for y in range(n))
    return UndirectedGraph(m + n, edges, tag, (m, n))


def _check_vertices(n: int, caps: Caps) -> None:
    if n > caps.max_vertices:
        raise ResourceCapError(f"{n} vertices exceeds the storage cap {caps.max_vertices}")


def from_edges(n_vertices: int, edges: Sequence[Edge], family_tag: str | None = None) -> UndirectedGraph:
    """Normalise an arbitrary edge list to canonical order."""
    seen = set()
    for u, v in edges:
        if u == v:
            raise InvalidInputError(f"self-loop at {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InvalidInputError(f"duplicate edge {key}")
        seen.add(key)
    return UndirectedGraph(n_vertices, tuple(sorted(seen)), family_tag)


def read_edge_list(path: str | Path, caps: Caps | None = None) -> UndirectedGraph:
    """Read a ``p <n> <m>`` / ``e <u> <v>`` file (1-indexed; ``c`` lines are comments)."""
    caps = resolve(caps)
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidInputError(f"cannot read edge list {path}: {exc}") from None
    return parse_edge_list(text, family_tag=f"file:{path}", caps=caps)


def parse_edge_list(text: str, family_tag: str | None = None, caps: Caps | None = None) -> UndirectedGraph:
    caps = resolve(caps)
    n = m = None
    edges: list[Edge] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        fields = line.split()
        if not fields or fields[0] == "c":
            continue
        try:
            if fields[0] == "p" and len(fields) == 3:
                if n is not None:
                    raise InvalidInputError("second 'p' line")
                n, m = int(fields[1]), int(fields[2])
            elif fields[0] == "e" and len(fields) == 3:
                if n is None:
                    raise InvalidInputError("'e' line before 'p' line")
                u, v = int(fields[1]) - 1, int(fields[2]) - 1
                if not (0 <= u < n and 0 <= v < n):
                    raise InvalidInputError("vertex out of range")
                edges.append((u, v))
            else:
                raise InvalidInputError("unrecognised line")
        except (InvalidInputError, ValueError) as exc:
            raise InvalidInputError(f"line {lineno}: {exc}") from None
    if n is None:
        raise InvalidInputError("missing 'p <n_vertices> <n_edges>' line")
    if len(edges) != m:
        raise InvalidInputError(f"header announces {m} edges, found {len(edges)}")
    _check_vertices(n, caps)
    return from_edges(n, edges, family_tag)


def format_edge_list(g: UndirectedGraph) -> str:
    lines = [f"p {g.n_vertices} {g.n_edges}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def orient(g: UndirectedGraph, mask: OrientationMask | str | Sequence[bool]) -> OrientedGraph:
    if isinstance(mask, str):
        mask = OrientationMask.from_str(mask)
    elif not isinstance(mask, OrientationMask):
        mask = OrientationMask(tuple(bool(b) for b in mask))
    if len(mask) != g.n_edges:
        raise InvalidInputError(f"mask has {len(mask)} bits but the graph has {g.n_edges} edges")
    arcs = tuple((v, u) if bit else (u, v) for (u, v), bit in zip(g.edges, mask.bits))
    return OrientedGraph(g.n_vertices, arcs, g.family_tag, g.parts)


def enumerate_orientations(
    g: UndirectedGraph, caps: Caps | None = None, start: int = 0, stop: int | None = None
) -> Iterator[tuple[OrientationMask, OrientedGraph]]:
    """Yield every orientation, masks in increasing binary order.

    ``start``/``stop`` select a half-open range of mask integers so scans can be
    partitioned across workers.
    """
    caps = resolve(caps)
    m = g.n_edges
    if m > caps.max_edges:
        raise ResourceCapError(f"{m} edges exceeds the enumeration cap {caps.max_edges}")
    total = 1 << m
    stop = total if stop is None else min(stop, total)
    for value in range(start, stop):
        mask = OrientationMask.from_int(value, m)
        yield mask, orient(g, mask)


def reverse(og: OrientedGraph) -> OrientedGraph:
    return OrientedGraph(og.n_vertices, tuple((h, t) for t, h in og.arcs), og.family_tag, og.parts)


VERTEX = "vertex"
ARC = "arc"


@dataclass(frozen=True)
class Labelling:
    """Labels ``1..r`` on the vertices or on the arcs (canonical edge order)."""

    target: str
    labels: tuple[int, ...]
    r: int = 0  # 0 means "the largest label used"

    def __post_init__(self) -> None:
        if self.target not in (VERTEX, ARC):
            raise InvalidInputError(f"labelling target must be 'vertex' or 'arc', not {self.target!r}")
        labels = tuple(int(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        r = self.r or max(labels, default=1)
        object.__setattr__(self, "r", r)
        if any(not (1 <= x <= r) for x in labels):
            raise InvalidInputError(f"labels must lie in 1..{r}")

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def n_used(self) -> int:
        return len(set(self.labels))

    def check_length(self, og: "OrientedGraph | UndirectedGraph") -> None:
        expected = og.n_vertices if self.target == VERTEX else (
            og.n_arcs if isinstance(og, OrientedGraph) else og.n_edges
        )
        if len(self.labels) != expected:
            raise InvalidInputError(
                f"{self.target} labelling has {len(self.labels)} entries, expected {expected}"
            )


def is_proper(g: "OrientedGraph | UndirectedGraph", lab: Labelling) -> bool:
    """Vertex case: arc endpoints differ. Arc case: arcs sharing an endpoint differ."""
    pairs = g.arcs if isinstance(g, OrientedGraph) else g.edges
    lab.check_length(g)
    if lab.target == VERTEX:
        return all(lab.labels[u] != lab.labels[v] for u, v in pairs)
    seen: dict[tuple[int, int], int] = {}
    for i, (u, v) in enumerate(pairs):
        for key in ((u, lab.labels[i]), (v, lab.labels[i])):
            if key in seen:
                return False
            seen[key] = i
    return True
