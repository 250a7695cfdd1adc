"""Generating sets of the toric, tiling and flip ideals, and binomial membership."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .binomial import (
    Binomial,
    DecompositionCertificate,
    Monomial,
    Term,
    binomial_of_cycle,
    binomial_of_tilings,
    mono_degree,
)
from .graph import TilingGraph, build_graph, chordless_cycles
from .moves import fiber_graph, flip_moves
from .region import Region
from .tiling import Tiling, TilingError, enumerate_tilings

DEFAULT_BUDGET = 10**7
KINDS = ("toric", "tiling", "flip")


@dataclass(frozen=True)
class IdealPresentation:
    kind: str
    generators: tuple[Binomial, ...]
    n_vars: int
    graph: TilingGraph | None = None

    def degrees(self) -> list[int]:
        return sorted(g.binomial_degree for g in self.generators)

    def to_plain(self) -> str:
        return "".join(f"{g.to_str(underscore=True)}\n" for g in self.generators)


def toric_generators(graph: TilingGraph) -> IdealPresentation:
    """One binomial per chordless cycle; the first monomial holds its smallest label."""
    gens = tuple(binomial_of_cycle(c) for c in chordless_cycles(graph))
    return IdealPresentation("toric", gens, graph.n_edges, graph)


def flip_ideal_generators(graph: TilingGraph) -> IdealPresentation:
    gens = tuple(binomial_of_cycle(c) for c in chordless_cycles(graph, max_length=4))
    return IdealPresentation("flip", gens, graph.n_edges, graph)


def tiling_ideal_generators(tilings: list[Tiling], graph: TilingGraph | None = None) -> IdealPresentation:
    """Star presentation B_{T_1,T_i}, i >= 2, around the lexicographically first tiling.

    Any B_{T_i,T_j} equals B_{T_1,T_j} - B_{T_1,T_i}, so this generates the
    whole tiling ideal.
    """
    if not tilings:
        raise TilingError("empty tiling space")
    ts = sorted(tilings)
    base = ts[0]
    gens = tuple(binomial_of_tilings(base, t) for t in ts[1:])
    n = graph.n_edges if graph is not None else max((max(t.edges, default=0) for t in ts), default=0)
    return IdealPresentation("tiling", gens, n, graph)


@dataclass(frozen=True)
class Membership:
    """Outcome of a membership search.

    ``member`` is None when the state budget ran out before a verdict.
    """

    member: bool | None
    certificate: DecompositionCertificate | None
    explored: int

    @property
    def budget_exceeded(self) -> bool:
        return self.member is None

    def __iter__(self):
        yield self.member
        yield self.certificate


def _sub(state: dict[int, int], m: Monomial) -> dict[int, int] | None:
    out = dict(state)
    for e, k in m:
        left = out.get(e, 0) - k
        if left < 0:
            return None
        if left:
            out[e] = left
        else:
            del out[e]
    return out


def binomial_in_binomial_ideal(
    b: Binomial, gens: IdealPresentation, budget: int = DEFAULT_BUDGET
) -> Membership:
    """Decide y^u - y^v ∈ <gens> by breadth-first search over the fiber of u.

    A monomial w·y^{g.u} is joined to w·y^{g.v} (and back) for every
    generator g.  The ideal contains the binomial exactly when v is reachable
    from u; the search stays inside {x >= 0 : A x = A u}, which is finite.
    """
    graph = gens.graph
    if graph is not None and not b.is_homogeneous(graph):
        raise ValueError(f"binomial {b} is not homogeneous: A·u != A·v")
    if graph is None and mono_degree(b.u) != mono_degree(b.v):
        raise ValueError(f"binomial {b} is not homogeneous")
    if b.is_zero:
        return Membership(True, DecompositionCertificate(b, ()), 1)
    oriented = []
    for i, g in enumerate(gens.generators):
        if g.is_zero:
            continue
        oriented.append((i, 1, g.u, g.v))
        oriented.append((i, -1, g.v, g.u))
    start, goal = b.u, b.v
    parent: dict[Monomial, tuple[Monomial, int, int, Monomial] | None] = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        state = dict(cur)
        for i, sign, lhs, rhs in oriented:
            rest = _sub(state, lhs)
            if rest is None:
                continue
            for e, k in rhs:
                rest[e] = rest.get(e, 0) + k
            nxt = tuple(sorted(rest.items()))
            if nxt in parent:
                continue
            parent[nxt] = (cur, i, sign, _rest_monomial(cur, lhs))
            if nxt == goal:
                return Membership(True, _telescope(b, gens, parent, goal), len(parent))
            if len(parent) >= budget:
                return Membership(None, None, len(parent))
            queue.append(nxt)
    return Membership(False, None, len(parent))


def _rest_monomial(cur: Monomial, lhs: Monomial) -> Monomial:
    rest = _sub(dict(cur), lhs)
    assert rest is not None
    return tuple(sorted(rest.items()))


def _telescope(b: Binomial, gens: IdealPresentation, parent, goal: Monomial) -> DecompositionCertificate:
    terms = []
    node = goal
    while parent[node] is not None:
        prev, i, sign, mult = parent[node]
        g = gens.generators[i]
        kind = "flip" if mono_degree(g.u) == mono_degree(g.v) == g.binomial_degree == 2 else "other"
        terms.append(Term(sign, mult, g, kind))
        node = prev
    return DecompositionCertificate(b, tuple(reversed(terms)))


def tiling_subset_flip(region: Region, budget: int = DEFAULT_BUDGET) -> tuple[bool, Binomial | None]:
    """Decide I_tiling ⊆ I_flip generator by generator.

    The verdict is cross-checked against connectivity of the flip fiber graph;
    a disagreement raises AssertionError.  On failure the first tiling-ideal
    generator outside the flip ideal is returned as witness.
    """
    graph = build_graph(region)
    tilings = enumerate_tilings(graph)
    if not tilings:
        raise TilingError("region has no tilings")
    tiling_ideal = tiling_ideal_generators(tilings, graph)
    flips = flip_ideal_generators(graph)
    verdict, witness = True, None
    for g in tiling_ideal.generators:
        res = binomial_in_binomial_ideal(g, flips, budget)
        if res.member is None:
            raise RuntimeError(f"membership of {g} inconclusive: budget of {budget} states exceeded")
        if not res.member:
            verdict, witness = False, g
            break
    connected = fiber_graph(tilings, flip_moves(graph)).is_connected()
    if connected != verdict:
        raise AssertionError(
            f"ideal containment ({verdict}) disagrees with flip connectivity ({connected})")
    return verdict, witness


def indispensable_generators(pres: IdealPresentation, budget: int = 10**5) -> list[int]:
    """Indices of generators not reachable through the remaining generators.

    A heuristic diagnostic: a generator is flagged when its own two monomials
    fall into different components once it is removed.
    """
    flagged = []
    for i, g in enumerate(pres.generators):
        others = IdealPresentation(pres.kind, pres.generators[:i] + pres.generators[i + 1:],
                                   pres.n_vars, pres.graph)
        res = binomial_in_binomial_ideal(g, others, budget)
        if res.member is False:
            flagged.append(i)
    return flagged


def export_cas(pres: IdealPresentation, style: str) -> str:
    """Ring and ideal definitions for Macaulay2 or Singular over the rationals."""
    n = pres.n_vars
    if style == "macaulay2":
        ring = f"R = QQ[y_1..y_{n}];" if n else "R = QQ;"
        body = ", ".join(_poly(g, "y_{}") for g in pres.generators) or "0_R"
        return f"{ring}\nI = ideal({body});\n"
    if style == "singular":
        ring = f"ring R = 0, (y(1..{n})), dp;" if n else "ring R = 0, (y), dp;"
        body = ", ".join(_poly(g, "y({})") for g in pres.generators) or "0"
        return f"{ring}\nideal I = {body};\n"
    raise ValueError(f"unsupported CAS style {style!r}; expected 'macaulay2' or 'singular'")


def _poly(g: Binomial, var: str) -> str:
    def mono(m: Monomial) -> str:
        if not m:
            return "1"
        return "*".join(var.format(e) + (f"^{k}" if k > 1 else "") for e, k in m)

    return f"{mono(g.u)}-{mono(g.v)}"


def ideal_presentation(region: Region, which: str) -> IdealPresentation:
    graph = build_graph(region)
    if which == "toric":
        return toric_generators(graph)
    if which == "flip":
        return flip_ideal_generators(graph)
    if which == "tiling":
        return tiling_ideal_generators(enumerate_tilings(graph), graph)
    raise ValueError(f"unknown ideal {which!r}; expected one of {KINDS}")


__all__ = [
    "IdealPresentation",
    "Membership",
    "binomial_in_binomial_ideal",
    "export_cas",
    "flip_ideal_generators",
    "ideal_presentation",
    "indispensable_generators",
    "tiling_ideal_generators",
    "tiling_subset_flip",
    "toric_generators",
]
