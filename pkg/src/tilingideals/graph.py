"""The adjacency graph of a region and its cycle structure.

Vertices are cells in lexicographic order, edges join cells sharing a
codimension-one face.  Both carry 1-based labels; edge labels are the
variable indices ``y_1 .. y_E`` used throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .region import Cell, Region, RegionError


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Cycle:
    """A cycle given by its closed vertex walk and the matching edge walk.

    ``vertices[i]`` and ``vertices[i + 1]`` (cyclically) are joined by
    ``edges[i]``; labels are 1-based.
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True, eq=False)
class TilingGraph:
    dim: int
    vertices: tuple[Cell, ...]
    edges: tuple[tuple[int, int], ...]
    _index: dict[Cell, int] = field(repr=False, compare=False)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def vertex_label(self, cell: Cell) -> int:
        return self._index[cell]

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.edges[e - 1]

    def cells_of(self, e: int) -> tuple[Cell, Cell]:
        a, b = self.edges[e - 1]
        return self.vertices[a - 1], self.vertices[b - 1]

    @cached_property
    def edge_between(self) -> dict[tuple[int, int], int]:
        """Map (a, b) with a < b vertex labels to the edge label."""
        return {pair: i for i, pair in enumerate(self.edges, start=1)}

    def edge_label(self, a: int, b: int) -> int | None:
        return self.edge_between.get((a, b) if a < b else (b, a))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """``adjacency[v - 1]`` lists the neighbors of vertex ``v``."""
        adj: list[list[int]] = [[] for _ in self.vertices]
        for a, b in self.edges:
            adj[a - 1].append(b)
            adj[b - 1].append(a)
        return tuple(tuple(sorted(n)) for n in adj)

    @cached_property
    def incident_edges(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in self.vertices]
        for e, (a, b) in enumerate(self.edges, start=1):
            inc[a - 1].append(e)
            inc[b - 1].append(e)
        return tuple(tuple(x) for x in inc)

    def color(self, v: int) -> int:
        """Bipartition class of vertex ``v``: parity of the coordinate sum."""
        return sum(self.vertices[v - 1]) % 2

    def degree_vector(self, exponents: dict[int, int]) -> tuple[int, ...]:
        """A·u for a sparse exponent vector over edge labels."""
        deg = [0] * self.n_vertices
        for e, k in exponents.items():
            a, b = self.edges[e - 1]
            deg[a - 1] += k
            deg[b - 1] += k
        return tuple(deg)

    def dump(self) -> str:
        lines = [f"vertices {self.n_vertices} edges {self.n_edges}"]
        lines += [f"e{i}: v{a} v{b}" for i, (a, b) in enumerate(self.edges, start=1)]
        return "\n".join(lines) + "\n"


def build_graph(region: Region) -> TilingGraph:
    if not region.cells:
        raise RegionError("empty region")
    cells = tuple(sorted(region.cells))
    index = {c: i for i, c in enumerate(cells, start=1)}
    edges = []
    for c in cells:
        for axis in range(region.dim):
            other = c[:axis] + (c[axis] + 1,) + c[axis + 1:]
            j = index.get(other)
            if j is not None:
                edges.append((index[c], j))
    edges.sort()
    return TilingGraph(region.dim, cells, tuple(edges), index)


def incidence_matrix(graph: TilingGraph) -> np.ndarray:
    """V x E vertex-edge incidence matrix with 0/1 entries."""
    A = np.zeros((graph.n_vertices, graph.n_edges), dtype=np.int64)
    for j, (a, b) in enumerate(graph.edges):
        A[a - 1, j] = 1
        A[b - 1, j] = 1
    return A


def is_bipartite(graph: TilingGraph) -> bool:
    return all(graph.color(a) != graph.color(b) for a, b in graph.edges)


def make_cycle(graph: TilingGraph, vertices: list[int] | tuple[int, ...]) -> Cycle:
    """Build a :class:`Cycle` from a closed vertex walk, in canonical rotation."""
    k = len(vertices)
    edges = []
    for i in range(k):
        e = graph.edge_label(vertices[i], vertices[(i + 1) % k])
        if e is None:
            raise GraphError(f"vertices {vertices[i]} and {vertices[(i + 1) % k]} are not adjacent")
        edges.append(e)
    return canonical_cycle(tuple(vertices), tuple(edges))


def canonical_cycle(vertices: tuple[int, ...], edges: tuple[int, ...]) -> Cycle:
    """Rotate/reflect so the smallest edge label comes first, followed by the
    smaller of its two cycle neighbours."""
    k = len(edges)
    if k <= 2:
        i = edges.index(min(edges))
        return Cycle(vertices[i:] + vertices[:i], edges[i:] + edges[:i])
    i = edges.index(min(edges))
    if edges[(i + 1) % k] < edges[i - 1]:
        return Cycle(vertices[i:] + vertices[:i], edges[i:] + edges[:i])
    # Reverse: edge j joins v[j], v[j+1]; walking backwards from v[i+1].
    rv = tuple(vertices[(i + 1 - t) % k] for t in range(k))
    re = tuple(edges[(i - t) % k] for t in range(k))
    return Cycle(rv, re)


def chordless_cycles(graph: TilingGraph, max_length: int | None = None) -> list[Cycle]:
    """All induced cycles of length <= ``max_length``, sorted by (length, edges).

    Induced paths are grown from their smallest vertex ``s``; a candidate
    extension must avoid every interior path vertex's neighbourhood, which
    keeps the path induced, and a path closes as soon as it returns next to
    ``s``.  Requiring ``path[1] < path[-1]`` fixes the traversal direction.
    """
    n = graph.n_vertices
    nbr_mask = [0] * (n + 1)
    for v in range(1, n + 1):
        for w in graph.adjacency[v - 1]:
            nbr_mask[v] |= 1 << w
    limit = max_length if max_length is not None else n
    found: list[Cycle] = []

    def extend(path: list[int], blocked: int, s_nbrs: int) -> None:
        last = path[-1]
        for w in graph.adjacency[last - 1]:
            if w <= path[0] or (blocked >> w) & 1:
                continue
            if (s_nbrs >> w) & 1:
                if len(path) >= 3 and path[1] < w:
                    found.append(make_cycle(graph, path + [w]))
                continue
            if len(path) + 1 >= limit:
                # Closing later would need at least one more vertex.
                continue
            path.append(w)
            extend(path, blocked | nbr_mask[last] | (1 << last), s_nbrs)
            path.pop()

    for s in range(1, n + 1):
        if limit < 3:
            break
        s_nbrs = nbr_mask[s]
        for p1 in graph.adjacency[s - 1]:
            if p1 < s:
                continue
            extend([s, p1], (1 << s) | (1 << p1) | 0, s_nbrs)
    found.sort(key=lambda c: (c.length, c.edges))
    return found


def chords(cycle: Cycle, graph: TilingGraph) -> list[tuple[int, bool]]:
    """Chords of ``cycle`` as (edge label, is_even) pairs, sorted by label.

    A chord joining cycle positions i < j is even when j - i is odd, i.e. it
    splits the cycle into two even cycles.
    """
    validate_cycle(cycle, graph)
    pos = {v: i for i, v in enumerate(cycle.vertices)}
    on_cycle = set(cycle.edges)
    out = []
    for e, (a, b) in enumerate(graph.edges, start=1):
        if e in on_cycle or a not in pos or b not in pos:
            continue
        out.append((e, abs(pos[a] - pos[b]) % 2 == 1))
    return out


def validate_cycle(cycle: Cycle, graph: TilingGraph) -> None:
    k = len(cycle.vertices)
    if k != len(cycle.edges) or k < 3 or len(set(cycle.vertices)) != k:
        raise GraphError("not a simple cycle")
    for i in range(k):
        a, b = cycle.vertices[i], cycle.vertices[(i + 1) % k]
        if graph.edge_label(a, b) != cycle.edges[i]:
            raise GraphError(f"edge {cycle.edges[i]} does not join v{a} and v{b}")


def four_cycles(graph: TilingGraph) -> list[Cycle]:
    return chordless_cycles(graph, max_length=4)
