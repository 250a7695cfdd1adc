"""Local moves on tilings and the fiber graphs they induce."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .graph import Cycle, TilingGraph, build_graph, chordless_cycles
from .region import Region
from .tiling import Tiling, TilingError, enumerate_tilings

MOVE_KINDS = ("flip", "flip+trit", "cycles")


class InapplicableMove(ValueError):
    pass


class NotConnected(ValueError):
    pass


@dataclass(frozen=True)
class Move:
    """Swap the edge set ``remove`` for ``add`` (a move of size |remove|)."""

    remove: frozenset[int]
    add: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.remove)

    def reversed(self) -> "Move":
        return Move(self.add, self.remove)

    @cached_property
    def masks(self) -> tuple[int, int]:
        r = sum(1 << (e - 1) for e in self.remove)
        a = sum(1 << (e - 1) for e in self.add)
        return r, a

    def __str__(self) -> str:
        return (f"-{','.join(map(str, sorted(self.remove)))} "
                f"+{','.join(map(str, sorted(self.add)))}")


def move_of_cycle(cycle: Cycle) -> Move:
    """Alternating split of a canonical cycle; ``remove`` holds the smallest label."""
    return Move(frozenset(cycle.edges[0::2]), frozenset(cycle.edges[1::2]))


def flip_moves(graph: TilingGraph) -> list[Move]:
    return [move_of_cycle(c) for c in chordless_cycles(graph, max_length=4)]


def trit_moves(graph: TilingGraph) -> list[Move]:
    return [move_of_cycle(c) for c in chordless_cycles(graph, max_length=6) if c.length == 6]


def cycle_moves(graph: TilingGraph) -> list[Move]:
    return [move_of_cycle(c) for c in chordless_cycles(graph)]


def moves_of_kind(graph: TilingGraph, kind: str) -> list[Move]:
    if kind == "flip":
        return flip_moves(graph)
    if kind == "flip+trit":
        return [move_of_cycle(c) for c in chordless_cycles(graph, max_length=6)]
    if kind == "cycles":
        return cycle_moves(graph)
    raise ValueError(f"unknown move set {kind!r}; expected one of {MOVE_KINDS}")


def apply_move(t: Tiling, m: Move) -> Tiling:
    """(t ∖ remove) ∪ add; raises InapplicableMove unless remove ⊆ t and add ∩ t = ∅."""
    r, a = m.masks
    if t.mask & r != r or t.mask & a:
        raise InapplicableMove(f"move {m} does not apply to tiling {t}")
    return Tiling.from_mask((t.mask & ~r) | a)


def _step(mask: int, r: int, a: int) -> int | None:
    if mask & r == r and not mask & a:
        return (mask & ~r) | a
    return None


@dataclass(frozen=True)
class FiberGraph:
    """Tilings as nodes; arc (i, j, k) when move k (either direction) takes i to j."""

    nodes: tuple[Tiling, ...]
    arcs: tuple[tuple[int, int, int], ...]

    def neighbors(self) -> list[list[int]]:
        adj: list[set[int]] = [set() for _ in self.nodes]
        for i, j, _ in self.arcs:
            adj[i].add(j)
        return [sorted(s) for s in adj]

    def components(self) -> list[list[int]]:
        adj = self.neighbors()
        seen = [False] * len(self.nodes)
        comps = []
        for s in range(len(self.nodes)):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [s], deque([s])
            while queue:
                v = queue.popleft()
                for w in adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1


def fiber_graph(tilings: list[Tiling], moves: list[Move]) -> FiberGraph:
    index = {t.mask: i for i, t in enumerate(tilings)}
    arcs = []
    for i, t in enumerate(tilings):
        for k, m in enumerate(moves):
            r, a = m.masks
            for rr, aa in ((r, a), (a, r)):
                nxt = _step(t.mask, rr, aa)
                if nxt is not None:
                    j = index.get(nxt)
                    if j is None:
                        raise TilingError(f"move {m} leads outside the given tiling list")
                    arcs.append((i, j, k))
    arcs.sort()
    return FiberGraph(tuple(tilings), tuple(arcs))


def is_connected_by(region: Region, move_kind: str) -> tuple[bool, int]:
    """Connectivity of the tiling space under a named move set, with component count."""
    graph = build_graph(region)
    tilings = enumerate_tilings(graph)
    if not tilings:
        raise TilingError("region has no tilings")
    fg = fiber_graph(tilings, moves_of_kind(graph, move_kind))
    k = len(fg.components())
    return k == 1, k


def connection_path(t1: Tiling, t2: Tiling, moves: list[Move]) -> list[Move]:
    """Shortest sequence of oriented moves taking t1 to t2 (BFS).

    Neighbours are explored in (move index, forward before reverse) order, so
    the result is deterministic.
    """
    if t1 == t2:
        return []
    oriented = []
    for m in moves:
        oriented.append(m)
        oriented.append(m.reversed())
    masks = [m.masks for m in oriented]
    parent: dict[int, tuple[int, int] | None] = {t1.mask: None}
    queue = deque([t1.mask])
    goal = t2.mask
    while queue:
        cur = queue.popleft()
        for k, (r, a) in enumerate(masks):
            nxt = _step(cur, r, a)
            if nxt is None or nxt in parent:
                continue
            parent[nxt] = (cur, k)
            if nxt == goal:
                path = []
                node = nxt
                while parent[node] is not None:
                    prev, kk = parent[node]
                    path.append(oriented[kk])
                    node = prev
                return path[::-1]
            queue.append(nxt)
    raise NotConnected("tilings are not connected by the given moves")
