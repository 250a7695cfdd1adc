"""Tilings as perfect matchings of the region graph, and their cycle covers."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import mpmath
import numpy as np

from .graph import Cycle, TilingGraph


class TilingError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Tiling:
    """A perfect matching, stored as the sorted tuple of its edge labels."""

    edges: tuple[int, ...]

    @classmethod
    def of(cls, edges) -> "Tiling":
        return cls(tuple(sorted(edges)))

    @classmethod
    def from_mask(cls, mask: int) -> "Tiling":
        out = []
        e = 1
        while mask:
            if mask & 1:
                out.append(e)
            mask >>= 1
            e += 1
        return cls(tuple(out))

    @cached_property
    def mask(self) -> int:
        m = 0
        for e in self.edges:
            m |= 1 << (e - 1)
        return m

    def vector(self, n_edges: int) -> np.ndarray:
        x = np.zeros(n_edges, dtype=np.int64)
        x[[e - 1 for e in self.edges]] = 1
        return x

    def __contains__(self, e: object) -> bool:
        return e in self.edges

    def __len__(self) -> int:
        return len(self.edges)

    def __str__(self) -> str:
        return ",".join(map(str, self.edges))


def parse_tiling(text: str) -> Tiling:
    text = text.strip()
    if not text:
        return Tiling(())
    try:
        return Tiling.of(int(t) for t in text.split(","))
    except ValueError:
        raise TilingError(f"malformed tiling {text!r}") from None


def is_perfect_matching(graph: TilingGraph, edges) -> bool:
    covered = [0] * graph.n_vertices
    for e in edges:
        if not 1 <= e <= graph.n_edges:
            return False
        a, b = graph.edges[e - 1]
        covered[a - 1] += 1
        covered[b - 1] += 1
    return all(c == 1 for c in covered)


def _matching_masks(graph: TilingGraph, limit: int | None = None) -> list[int]:
    n = graph.n_vertices
    if n % 2 or sum(graph.color(v) for v in range(1, n + 1)) * 2 != n:
        return []
    inc = [[(w, e - 1) for w, e in zip(graph.adjacency[v - 1], _edges_to(graph, v))]
           for v in range(1, n + 1)]
    out: list[int] = []
    uncovered = set(range(1, n + 1))
    chosen = [0]

    def search() -> bool:
        if not uncovered:
            out.append(chosen[0])
            return limit is not None and len(out) >= limit
        # Branch on the uncovered vertex with fewest uncovered neighbours.
        best, best_opts = 0, None
        for v in uncovered:
            opts = [(w, e) for w, e in inc[v - 1] if w in uncovered]
            if best_opts is None or len(opts) < len(best_opts):
                best, best_opts = v, opts
                if len(opts) <= 1:
                    break
        if not best_opts:
            return False
        uncovered.discard(best)
        for w, e in best_opts:
            uncovered.discard(w)
            chosen[0] |= 1 << e
            stop = search()
            chosen[0] &= ~(1 << e)
            uncovered.add(w)
            if stop:
                uncovered.add(best)
                return True
        uncovered.add(best)
        return False

    search()
    return out


def _edges_to(graph: TilingGraph, v: int) -> list[int]:
    return [graph.edge_label(v, w) for w in graph.adjacency[v - 1]]


def enumerate_tilings(graph: TilingGraph) -> list[Tiling]:
    """All perfect matchings, sorted lexicographically by edge-label tuple."""
    return sorted(Tiling.from_mask(m) for m in _matching_masks(graph))


def count_tilings(graph: TilingGraph) -> int:
    return len(_matching_masks(graph))


def first_tiling(graph: TilingGraph) -> Tiling | None:
    masks = _matching_masks(graph, limit=1)
    return Tiling.from_mask(masks[0]) if masks else None


def count_rectangle_kasteleyn(m: int, n: int) -> int:
    """Number of domino tilings of the 2m x 2n rectangle via the product formula

        4^(mn) * prod_{j<=m} prod_{k<=n} (cos^2(j pi/(2m+1)) + cos^2(k pi/(2n+1)))
    """
    if m < 1 or n < 1:
        raise ValueError(f"m and n must be positive, got ({m}, {n})")
    digits = 30 + 2 * m * n
    with mpmath.workdps(digits):
        prod = mpmath.mpf(1)
        for j in range(1, m + 1):
            cj = mpmath.cos(j * mpmath.pi / (2 * m + 1)) ** 2
            for k in range(1, n + 1):
                prod *= cj + mpmath.cos(k * mpmath.pi / (2 * n + 1)) ** 2
        value = mpmath.mpf(4) ** (m * n) * prod
        nearest = mpmath.nint(value)
        if abs(value - nearest) >= mpmath.mpf("1e-6"):
            raise ArithmeticError(f"product formula gave non-integer {value}")
        return int(nearest)


@dataclass(frozen=True)
class CoverCycle:
    """One cycle of T1 ∪ T2; ``colors[i]`` is 1 or 2, the tiling owning edge i.

    A shared domino is a 2-cycle with ``edges == (e, e)``.
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    colors: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    def edges_of(self, color: int) -> tuple[int, ...]:
        return tuple(e for e, c in zip(self.edges, self.colors) if c == color)

    def as_cycle(self) -> Cycle:
        return Cycle(self.vertices, self.edges)


@dataclass(frozen=True)
class CycleCover:
    cycles: tuple[CoverCycle, ...]

    def long_cycles(self) -> tuple[CoverCycle, ...]:
        return tuple(c for c in self.cycles if c.length > 2)

    def dump(self) -> str:
        return "".join(
            f"{','.join(map(str, c.edges_of(1)))} | {','.join(map(str, c.edges_of(2)))}\n"
            for c in self.cycles
        )


def cycle_cover(graph: TilingGraph, t1: Tiling, t2: Tiling) -> CycleCover:
    """Decompose the multigraph T1 ∪ T2 into vertex-disjoint alternating cycles.

    Cycles are ordered by their smallest vertex label and each walk starts at
    that vertex along its T1 edge.
    """
    if not (is_perfect_matching(graph, t1.edges) and is_perfect_matching(graph, t2.edges)):
        raise TilingError("both arguments must be tilings of the given graph")
    mate1 = _mates(graph, t1)
    mate2 = _mates(graph, t2)
    seen = [False] * (graph.n_vertices + 1)
    cycles = []
    for start in range(1, graph.n_vertices + 1):
        if seen[start]:
            continue
        verts, edges, colors = [], [], []
        v, color = start, 1
        while True:
            seen[v] = True
            w, e = (mate1 if color == 1 else mate2)[v]
            verts.append(v)
            edges.append(e)
            colors.append(color)
            v, color = w, 3 - color
            if v == start and color == 1:
                break
        cycles.append(CoverCycle(tuple(verts), tuple(edges), tuple(colors)))
    return CycleCover(tuple(cycles))


def _mates(graph: TilingGraph, t: Tiling) -> dict[int, tuple[int, int]]:
    mate = {}
    for e in t.edges:
        a, b = graph.edges[e - 1]
        mate[a] = (b, e)
        mate[b] = (a, e)
    return mate
