"""Binomials over the edge variables and explicit membership certificates.

A binomial ``y^u - y^v`` is stored as two sparse exponent vectors.  A
certificate is a list of terms ``sign * y^m * g`` whose expansion must equal
a target binomial; :func:`verify_certificate` checks that identity exactly.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .graph import Cycle, TilingGraph, chordless_cycles
from .region import Region, RegionError, is_simply_connected
from .tiling import CoverCycle, Tiling, TilingError, cycle_cover, is_perfect_matching

Monomial = tuple[tuple[int, int], ...]


class DecompositionError(RuntimeError):
    pass


def monomial(exps: Mapping[int, int] | Iterable[int]) -> Monomial:
    """Normalize a label multiset or {label: exponent} map to a sorted tuple."""
    if isinstance(exps, Mapping):
        items = exps.items()
    else:
        items = Counter(exps).items()
    return tuple(sorted((int(e), int(k)) for e, k in items if k))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    c = Counter(dict(a))
    c.update(dict(b))
    return monomial(c)


def mono_divides(a: Monomial, b: Monomial) -> bool:
    db = dict(b)
    return all(db.get(e, 0) >= k for e, k in a)


def mono_str(m: Monomial, underscore: bool = False) -> str:
    if not m:
        return "1"
    sep = "_" if underscore else ""
    return "*".join(f"y{sep}{e}" for e, k in m for _ in range(k))


def mono_degree(m: Monomial) -> int:
    return sum(k for _, k in m)


@dataclass(frozen=True)
class Binomial:
    u: Monomial
    v: Monomial

    @classmethod
    def of(cls, u, v) -> "Binomial":
        return cls(monomial(u), monomial(v))

    @property
    def is_zero(self) -> bool:
        return self.u == self.v

    @property
    def degree(self) -> int:
        return max(mono_degree(self.u), mono_degree(self.v))

    def normalized(self) -> tuple[Monomial, Monomial, Monomial]:
        """Split off the common factor: returns (m, u', v') with u = m u', v = m v'."""
        du, dv = dict(self.u), dict(self.v)
        common = {e: min(k, dv[e]) for e, k in du.items() if e in dv}
        uu = {e: k - common.get(e, 0) for e, k in du.items()}
        vv = {e: k - common.get(e, 0) for e, k in dv.items()}
        return monomial(common), monomial(uu), monomial(vv)

    @property
    def binomial_degree(self) -> int:
        """Degree of the coprime part; 0 for the zero binomial."""
        if self.is_zero:
            return 0
        _, uu, _ = self.normalized()
        return mono_degree(uu)

    def reversed(self) -> "Binomial":
        return Binomial(self.v, self.u)

    def times(self, m: Monomial) -> "Binomial":
        return Binomial(mono_mul(m, self.u), mono_mul(m, self.v))

    def is_homogeneous(self, graph: TilingGraph) -> bool:
        """A·u == A·v, i.e. the binomial lies in the toric ideal of the graph."""
        return graph.degree_vector(dict(self.u)) == graph.degree_vector(dict(self.v))

    def expand(self) -> Counter:
        out: Counter = Counter()
        if not self.is_zero:
            out[self.u] += 1
            out[self.v] -= 1
        return out

    def relabel(self, mapping: Mapping[int, int]) -> "Binomial":
        return Binomial(
            monomial({mapping[e]: k for e, k in self.u}),
            monomial({mapping[e]: k for e, k in self.v}),
        )

    def to_str(self, underscore: bool = False) -> str:
        return f"{mono_str(self.u, underscore)} - {mono_str(self.v, underscore)}"

    def __str__(self) -> str:
        return self.to_str()


def binomial_of_tilings(t1: Tiling, t2: Tiling) -> Binomial:
    return Binomial.of(t1.edges, t2.edges)


def binomial_of_cycle(c: Cycle | CoverCycle, start_color: int = 1) -> Binomial:
    """Alternating product binomial of an even cycle.

    For a cover cycle the first monomial collects the edges of tiling
    ``start_color``; for a plain cycle it collects the edges in odd walk
    positions (``start_color=1``) or even ones (``start_color=2``).
    """
    if isinstance(c, CoverCycle):
        return Binomial.of(c.edges_of(start_color), c.edges_of(3 - start_color))
    if len(c.edges) % 2:
        raise ValueError(f"odd cycle of length {len(c.edges)} has no binomial")
    odd, even = c.edges[0::2], c.edges[1::2]
    return Binomial.of(odd, even) if start_color == 1 else Binomial.of(even, odd)


@dataclass(frozen=True)
class Term:
    sign: int
    monomial: Monomial
    generator: Binomial
    kind: str = "other"
    # Tiling (1 = source, 2 = target) whose parallel domino pair was flipped.
    side: int | None = None

    def expand(self) -> Counter:
        out: Counter = Counter()
        for mono, coeff in self.generator.expand().items():
            out[mono_mul(self.monomial, mono)] += self.sign * coeff
        return out


@dataclass(frozen=True)
class DecompositionCertificate:
    target: Binomial
    terms: tuple[Term, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.terms)

    def expand(self) -> Counter:
        total: Counter = Counter()
        for t in self.terms:
            for mono, c in t.expand().items():
                total[mono] += c
        return Counter({m: c for m, c in total.items() if c})

    def generators_only(self, kind: str) -> bool:
        return all(t.kind == kind for t in self.terms)

    def to_text(self) -> str:
        lines = [f"target: {self.target}"]
        for t in self.terms:
            s = "+" if t.sign > 0 else "-"
            lines.append(f"{s} {mono_str(t.monomial)} * ( {t.generator} )")
        return "\n".join(lines) + "\n"


def flip_binomials(graph: TilingGraph) -> dict[frozenset, Binomial]:
    """Canonical flip binomial of each 4-cycle, keyed by its edge set."""
    out = {}
    for c in chordless_cycles(graph, max_length=4):
        out[frozenset(c.edges)] = binomial_of_cycle(c)
    return out


def certificate_mismatch(cert: DecompositionCertificate, graph: TilingGraph | None = None) -> str | None:
    """First problem found with the certificate, or None if it checks out."""
    for i, t in enumerate(cert.terms, start=1):
        if t.sign not in (1, -1):
            return f"term {i}: sign must be +1 or -1, got {t.sign}"
        if any(k < 0 for _, k in t.monomial):
            return f"term {i}: negative exponent in monomial"
        if t.kind == "flip":
            g = t.generator
            if not (mono_degree(g.u) == mono_degree(g.v) == 2 and g.binomial_degree == 2):
                return f"term {i}: claimed flip generator {g} is not a coprime quadratic"
            if graph is not None:
                edges = frozenset(e for e, _ in g.u) | frozenset(e for e, _ in g.v)
                known = _flip_table(graph).get(edges)
                if known is None or {known.u, known.v} != {g.u, g.v}:
                    return f"term {i}: {g} is not the binomial of a 4-cycle of the graph"
    lhs = cert.expand()
    rhs = Counter({m: c for m, c in cert.target.expand().items() if c})
    if lhs == rhs:
        return None
    for mono in sorted(set(lhs) | set(rhs)):
        if lhs.get(mono, 0) != rhs.get(mono, 0):
            return (f"coefficient of {mono_str(mono)}: expansion gives {lhs.get(mono, 0)}, "
                    f"target has {rhs.get(mono, 0)}")
    return "expansion differs from target"  # pragma: no cover


_FLIP_CACHE: dict[int, tuple[TilingGraph, dict]] = {}


def _flip_table(graph: TilingGraph) -> dict[frozenset, Binomial]:
    hit = _FLIP_CACHE.get(id(graph))
    if hit is None or hit[0] is not graph:
        if len(_FLIP_CACHE) > 64:
            _FLIP_CACHE.clear()
        hit = (graph, flip_binomials(graph))
        _FLIP_CACHE[id(graph)] = hit
    return hit[1]


def verify_certificate(cert: DecompositionCertificate, graph: TilingGraph | None = None) -> bool:
    """Exact check that the terms expand to the target.

    With ``graph`` given, every term marked ``flip`` must also use the
    binomial of an actual 4-cycle of that graph.
    """
    return certificate_mismatch(cert, graph) is None


def _check_pair(graph: TilingGraph, t1: Tiling, t2: Tiling) -> None:
    if not (is_perfect_matching(graph, t1.edges) and is_perfect_matching(graph, t2.edges)):
        raise TilingError("both arguments must be tilings of the given graph")


def cycle_decomposition(graph: TilingGraph, t1: Tiling, t2: Tiling) -> DecompositionCertificate:
    """Write B_{T1,T2} as a sum of monomial multiples of its cycle binomials.

    With the long cycles C_1..C_r of T1 ∪ T2 (2-cycles contribute zero), the
    i-th multiplier is y^((T1 ∖ (C_1..C_i)) ∪ (T2 ∩ (C_1..C_{i-1}))).
    """
    _check_pair(graph, t1, t2)
    target = binomial_of_tilings(t1, t2)
    cycles = cycle_cover(graph, t1, t2).long_cycles()
    s1, s2 = set(t1.edges), set(t2.edges)
    seen: set[int] = set()
    terms = []
    for c in cycles:
        upto = seen | set(c.edges)
        mult = (s1 - upto) | (s2 & seen)
        kind = "flip" if c.length == 4 else "cycle"
        terms.append(Term(1, monomial(mult), binomial_of_cycle(c, 1), kind))
        seen = upto
    cert = DecompositionCertificate(target, tuple(terms))
    problem = certificate_mismatch(cert)
    if problem:  # pragma: no cover - internal consistency guard
        raise DecompositionError(f"cycle decomposition failed to verify: {problem}")
    return cert


# ---------------------------------------------------------------------------
# Quadratic decomposition for simply connected planar regions.
#
# The construction produces a sequence of flips turning T1 into T2 and reads
# the certificate off it: each flip (D1 -> D2) applied to tiling P contributes
# y^(P ∖ D1) (y^D1 - y^D2), and the sum telescopes to y^T1 - y^T2.

_Step = tuple[int, int, int, int]  # (tiling mask before, removed mask, added mask, side)


class _PlanarFlipSolver:
    def __init__(self, graph: TilingGraph):
        self.g = graph
        self.coords = graph.vertices
        self.index = {c: i for i, c in enumerate(graph.vertices, start=1)}
        self.max_depth = 8 * graph.n_vertices + 16

    def bit(self, a: int, b: int) -> int:
        e = self.g.edge_label(a, b)
        if e is None:
            raise DecompositionError(f"no edge between v{a} and v{b}")
        return 1 << (e - 1)

    def at(self, x: int, y: int) -> int | None:
        return self.index.get((x, y))

    # -- cycle structure -------------------------------------------------
    def long_cycles(self, s: int, t: int) -> list[list[int]]:
        """Alternating cycles of length > 2 in S ∪ T as vertex walks.

        Each walk starts at its smallest vertex and leaves along the S edge.
        """
        g = self.g
        diff = s ^ t
        mate_s: dict[int, int] = {}
        mate_t: dict[int, int] = {}
        m, e = diff, 0
        while m:
            if m & 1:
                a, b = g.edges[e]
                if (s >> e) & 1:
                    mate_s[a], mate_s[b] = b, a
                else:
                    mate_t[a], mate_t[b] = b, a
            m >>= 1
            e += 1
        seen: set[int] = set()
        out = []
        for start in sorted(mate_s):
            if start in seen:
                continue
            walk, v, use_s = [], start, True
            while True:
                seen.add(v)
                walk.append(v)
                v = mate_s[v] if use_s else mate_t[v]
                use_s = not use_s
                if v == start:
                    break
            out.append(walk)
        return out

    def edge_mask(self, walk: list[int]) -> int:
        k = len(walk)
        m = 0
        for i in range(k):
            m |= self.bit(walk[i], walk[(i + 1) % k])
        return m

    def interior(self, walk: list[int]) -> list[int]:
        pts = [self.coords[v - 1] for v in walk]
        on = set(pts)
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        # Vertical unit edges of the polygon, as (x, lower y).
        verticals = []
        k = len(pts)
        for i in range(k):
            (x0, y0), (x1, y1) = pts[i], pts[(i + 1) % k]
            if x0 == x1:
                verticals.append((x0, min(y0, y1)))
        inside = []
        for x in range(min(xs) + 1, max(xs)):
            for y in range(min(ys) + 1, max(ys)):
                if (x, y) in on:
                    continue
                crossings = sum(1 for cx, cy in verticals if cx > x and cy == y)
                if crossings % 2:
                    v = self.index.get((x, y))
                    if v is None:
                        raise DecompositionError(
                            f"cell {(x, y)} inside a cycle is missing: region is not simply connected")
                    inside.append(v)
        return sorted(inside)

    # -- recursion ---------------------------------------------------------
    def solve(self, s: int, t: int, depth: int = 0) -> list[_Step]:
        cycles = self.long_cycles(s, t)
        if not cycles:
            return []
        if len(cycles) == 1:
            return self.solve_cycle(s, t, cycles[0], depth + 1)
        steps: list[_Step] = []
        cur = s
        for walk in cycles:
            nxt = cur ^ self.edge_mask(walk)
            steps += self.solve_cycle(cur, nxt, walk, depth + 1)
            cur = nxt
        return steps

    def flip(self, s: int, t: int, rem: int, add: int, depth: int) -> list[_Step]:
        """Apply the flip rem -> add to whichever of S, T holds ``rem``, then recurse."""
        if s & rem == rem:
            s2 = (s & ~rem) | add
            return [(s, rem, add, 1)] + self.solve(s2, t, depth)
        if t & rem == rem:
            t2 = (t & ~rem) | add
            return self.solve(s, t2, depth) + [(t2, add, rem, 2)]
        raise DecompositionError("flip pair is not held by either tiling")

    def solve_cycle(self, s: int, t: int, walk: list[int], depth: int) -> list[_Step]:
        if depth > self.max_depth:
            raise DecompositionError(
                f"recursion exceeded {self.max_depth} levels; the reduction is not terminating")
        if len(walk) == 4:
            cm = self.edge_mask(walk)
            return [(s, s & cm, t & cm, 1)]
        inner = self.interior(walk)
        if inner:
            return self.reduce_perimeter(s, t, walk, inner, depth)
        return self.reduce_contractible(s, t, walk, depth)

    def reduce_perimeter(self, s: int, t: int, walk: list[int], inner: list[int], depth: int) -> list[_Step]:
        inner_set = set(inner)
        k = len(walk)
        # Case 1: an interior domino parallel and adjacent to a cycle edge.
        for i in range(k):
            a, b = walk[i], walk[(i + 1) % k]
            (ax, ay), (bx, by) = self.coords[a - 1], self.coords[b - 1]
            normals = ((0, 1), (0, -1)) if ay == by else ((1, 0), (-1, 0))
            for dx, dy in normals:
                p, q = self.at(ax + dx, ay + dy), self.at(bx + dx, by + dy)
                if p not in inner_set or q not in inner_set:
                    continue
                pq = self.g.edge_label(p, q)
                if not (s >> (pq - 1)) & 1:
                    continue
                rem = self.bit(a, b) | (1 << (pq - 1))
                add = self.bit(a, p) | self.bit(b, q)
                return self.flip(s, t, rem, add, depth)
        # Case 2: no parallel domino.  Find an interior domino whose two
        # neighbours on one long side both lie on the cycle; the cycle then
        # enters those two vertices through parallel edges of one tiling, and
        # flipping them splits off a new cycle parallel to the domino.
        pos = {v: i for i, v in enumerate(walk)}
        dominoes = []
        for p in inner:
            for q in self.g.adjacency[p - 1]:
                if q > p and q in inner_set and (s >> (self.g.edge_label(p, q) - 1)) & 1:
                    dominoes.append((p, q))
        for horizontal, normal in ((True, (0, 1)), (True, (0, -1)), (False, (1, 0)), (False, (-1, 0))):
            dx, dy = normal
            for p, q in dominoes:
                (px, py), (qx, qy) = self.coords[p - 1], self.coords[q - 1]
                if (py == qy) != horizontal:
                    continue
                n1, n2 = self.at(px + dx, py + dy), self.at(qx + dx, qy + dy)
                if n1 not in pos or n2 not in pos:
                    continue
                t1, t2 = self.at(px + 2 * dx, py + 2 * dy), self.at(qx + 2 * dx, qy + 2 * dy)
                if t1 not in pos or t2 not in pos:
                    continue
                if not (self._cycle_adjacent(pos, walk, n1, t1) and self._cycle_adjacent(pos, walk, n2, t2)):
                    continue
                e1, e2 = self.bit(n1, t1), self.bit(n2, t2)
                rem = e1 | e2
                if not (s & rem == rem or t & rem == rem):
                    continue
                add = self.bit(n1, n2) | self.bit(t1, t2)
                return self.flip(s, t, rem, add, depth)
        raise DecompositionError("no reducible interior domino found inside a perimeter cycle")

    @staticmethod
    def _cycle_adjacent(pos: dict[int, int], walk: list[int], a: int, b: int) -> bool:
        d = abs(pos[a] - pos[b])
        return d == 1 or d == len(walk) - 1

    def reduce_contractible(self, s: int, t: int, walk: list[int], depth: int) -> list[_Step]:
        # North-west corner: topmost row, then leftmost vertex in it.
        v = min(walk, key=lambda w: (-self.coords[w - 1][1], self.coords[w - 1][0]))
        x, y = self.coords[v - 1]
        a, u, h = self.at(x + 1, y), self.at(x, y - 1), self.at(x + 1, y - 1)
        pos = {w: i for i, w in enumerate(walk)}
        if a not in pos or u not in pos or h not in pos:
            raise DecompositionError(f"cycle does not turn at its north-west corner {x, y} as expected")
        if not (self._cycle_adjacent(pos, walk, v, a) and self._cycle_adjacent(pos, walk, v, u)):
            raise DecompositionError(f"north-west corner {x, y} is not traversed east/south")
        uv, va = self.bit(u, v), self.bit(v, a)
        if self._cycle_adjacent(pos, walk, a, h):
            # u-v and a-h are parallel dominoes of one tiling.
            return self.flip(s, t, uv | self.bit(a, h), va | self.bit(u, h), depth)
        if self._cycle_adjacent(pos, walk, u, h):
            # v-a and u-h are parallel dominoes of one tiling.
            return self.flip(s, t, va | self.bit(u, h), uv | self.bit(a, h), depth)
        # Split along the even chord u-h into two shorter cycles.
        i = pos[u]
        k = len(walk)
        order = walk[i:] + walk[:i]
        if order[1] != v:
            order = [order[0]] + order[1:][::-1]
        j = order.index(h)
        first_half = order[: j + 1]
        second_half = order[j:] + [u]
        chord = self.bit(u, h)
        half_mask = 0
        half = first_half if s & uv else second_half
        for w0, w1 in zip(half, half[1:]):
            half_mask |= self.bit(w0, w1)
        mid = (s ^ half_mask) | chord
        return self.solve(s, mid, depth) + self.solve(mid, t, depth)


def quadratic_decomposition(
    graph: TilingGraph, t1: Tiling, t2: Tiling, region: Region | None = None
) -> DecompositionCertificate:
    """Certificate expressing B_{T1,T2} through flip binomials only.

    Requires a simply connected 2D region.  Long cycles of T1 ∪ T2 are handled
    one after another; a cycle enclosing shared dominoes is first reduced by
    flips against those dominoes, and a cycle enclosing nothing is shortened
    at its north-west corner, either by a flip or by splitting along the
    chord from the vertex south of the corner to its diagonal neighbour.
    """
    if graph.dim != 2:
        raise RegionError(f"quadratic decomposition needs a 2D region, got dim {graph.dim}")
    if region is not None and not is_simply_connected(region):
        raise RegionError("region is not simply connected")
    _check_pair(graph, t1, t2)
    target = binomial_of_tilings(t1, t2)
    if t1 == t2:
        return DecompositionCertificate(target, ())
    solver = _PlanarFlipSolver(graph)
    steps = solver.solve(t1.mask, t2.mask)
    table = _flip_table(graph)
    terms = []
    for before, rem, add, side in steps:
        rem_t, add_t = Tiling.from_mask(rem), Tiling.from_mask(add)
        gen = table.get(frozenset(rem_t.edges + add_t.edges))
        if gen is None:
            raise DecompositionError(f"step {rem_t} -> {add_t} is not a flip")
        sign = 1 if gen.u == monomial(rem_t.edges) else -1
        mult = Tiling.from_mask(before & ~rem).edges
        terms.append(Term(sign, monomial(mult), gen, "flip", side))
    cert = DecompositionCertificate(target, tuple(terms))
    problem = certificate_mismatch(cert, graph)
    if problem:
        raise DecompositionError(f"quadratic decomposition failed to verify: {problem}")
    return cert


def flip_path_of(cert: DecompositionCertificate) -> list[Binomial]:
    """The oriented flip binomials (D1 -> D2) of a certificate, in order."""
    return [t.generator if t.sign > 0 else t.generator.reversed() for t in cert.terms]


# ---------------------------------------------------------------------------
# Text formats

_MONO_RE = re.compile(r"^(1|y_?\d+(\^\d+)?(\s*\*\s*y_?\d+(\^\d+)?)*)$")


def parse_monomial(text: str) -> Monomial:
    text = text.strip()
    if not _MONO_RE.match(text):
        raise ValueError(f"malformed monomial {text!r}")
    if text == "1":
        return ()
    c: Counter = Counter()
    for factor in text.split("*"):
        factor = factor.strip().lstrip("y").lstrip("_")
        base, _, power = factor.partition("^")
        c[int(base)] += int(power) if power else 1
    return monomial(c)


def parse_binomial(text: str) -> Binomial:
    left, sep, right = text.partition(" - ")
    if not sep:
        left, sep, right = text.partition("-")
    if not sep:
        raise ValueError(f"malformed binomial {text!r}")
    return Binomial(parse_monomial(left), parse_monomial(right))


_TERM_RE = re.compile(r"^([+-])\s+(.+?)\s+\*\s+\(\s*(.+?)\s*\)\s*$")


def parse_certificate(text: str) -> DecompositionCertificate:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("//")]
    if not lines or not lines[0].startswith("target:"):
        raise ValueError("certificate must start with a 'target:' line")
    target = parse_binomial(lines[0][len("target:"):].strip())
    terms = []
    for n, line in enumerate(lines[1:], start=2):
        m = _TERM_RE.match(line)
        if not m:
            raise ValueError(f"line {n}: malformed term {line!r}")
        sign = 1 if m.group(1) == "+" else -1
        gen = parse_binomial(m.group(3))
        kind = "flip" if mono_degree(gen.u) == mono_degree(gen.v) == 2 and gen.binomial_degree == 2 else "other"
        terms.append(Term(sign, parse_monomial(m.group(2)), gen, kind))
    return DecompositionCertificate(target, tuple(terms))
