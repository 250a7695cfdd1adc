"""Structural invariants over seeded random regions of at most 14 cells."""

import itertools

import numpy as np
import pytest

from random_regions import random_regions
from tilingideals.binomial import binomial_of_cycle, binomial_of_tilings
from tilingideals.graph import build_graph, chordless_cycles, incidence_matrix, is_bipartite
from tilingideals.ideal import toric_generators
from tilingideals.moves import apply_move, cycle_moves
from tilingideals.tiling import cycle_cover, enumerate_tilings, is_perfect_matching

REGIONS = random_regions(500)
MAX_PAIRS = 60


def _vec(n, mono):
    x = np.zeros(n, dtype=np.int64)
    for e, k in mono:
        x[e - 1] += k
    return x


def check_region(region) -> list[str]:
    """Every violated invariant for one region, as short messages."""
    bad = []
    g = build_graph(region)
    a = incidence_matrix(g)
    if not is_bipartite(g):
        bad.append("graph not bipartite")
    for c in chordless_cycles(g):
        if c.length % 2:
            bad.append(f"odd chordless cycle {c.edges}")
    for b in toric_generators(g).generators:
        if not np.array_equal(a @ _vec(g.n_edges, b.u), a @ _vec(g.n_edges, b.v)):
            bad.append(f"toric generator {b} inhomogeneous")
    tilings = enumerate_tilings(g)
    for t1, t2 in itertools.islice(itertools.combinations(tilings, 2), MAX_PAIRS):
        b = binomial_of_tilings(t1, t2)
        if not np.array_equal(a @ _vec(g.n_edges, b.u), a @ _vec(g.n_edges, b.v)):
            bad.append(f"tiling binomial {b} inhomogeneous")
        cover = cycle_cover(g, t1, t2)
        seen = []
        for cyc in cover.cycles:
            seen.extend(cyc.vertices)
            if cyc.length % 2:
                bad.append("odd cover cycle")
            if cyc.length > 2 and not binomial_of_cycle(cyc).is_homogeneous(g):
                bad.append("cover cycle binomial inhomogeneous")
        if sorted(seen) != list(range(1, g.n_vertices + 1)):
            bad.append("cover cycles not a vertex partition")
    moves = cycle_moves(g)
    for t in tilings[:20]:
        for m in moves:
            for mm in (m, m.reversed()):
                if mm.remove <= set(t.edges):
                    nxt = apply_move(t, mm)
                    if not is_perfect_matching(g, nxt.edges):
                        bad.append(f"move {mm} broke tiling {t}")
    return bad


def test_sample_covers_both_dimensions_and_tileable_cases():
    dims = {r.dim for r in REGIONS}
    assert dims == {2, 3}
    assert all(len(r.cells) <= 14 for r in REGIONS)
    tileable = sum(bool(enumerate_tilings(build_graph(r))) for r in REGIONS)
    assert tileable >= 100


@pytest.mark.parametrize("chunk", range(10))
def test_invariants_hold(chunk):
    failures = {}
    for i in range(chunk * 50, chunk * 50 + 50):
        bad = check_region(REGIONS[i])
        if bad:
            failures[i] = bad
    assert not failures
