import itertools
from collections import Counter

import pytest

from conftest import fixture_region
from polyominoes import regions
from tilingideals.binomial import (
    Binomial,
    DecompositionCertificate,
    Term,
    binomial_of_cycle,
    binomial_of_tilings,
    certificate_mismatch,
    cycle_decomposition,
    flip_path_of,
    mono_mul,
    monomial,
    parse_binomial,
    parse_certificate,
    parse_monomial,
    quadratic_decomposition,
    verify_certificate,
)
from tilingideals.graph import build_graph, chordless_cycles
from tilingideals.moves import connection_path, flip_moves
from tilingideals.region import Region, RegionError, is_simply_connected
from tilingideals.tiling import Tiling, cycle_cover, enumerate_tilings


def _tiling(g, pairs):
    return Tiling.of(g.edge_label(g.vertex_label(a), g.vertex_label(b)) for a, b in pairs)


def _example_2x5():
    """West 2x2 block flips, east 2x3 block forms a 6-cycle; labels as in the worked example."""
    g = build_graph(fixture_region("box2x5"))
    t1 = _tiling(g, [((0, 0), (0, 1)), ((1, 0), (1, 1)),
                     ((2, 0), (2, 1)), ((3, 0), (4, 0)), ((3, 1), (4, 1))])
    t2 = _tiling(g, [((0, 0), (1, 0)), ((0, 1), (1, 1)),
                     ((2, 0), (3, 0)), ((2, 1), (3, 1)), ((4, 0), (4, 1))])
    cover = cycle_cover(g, t1, t2)
    rename = {}
    for c in cover.long_cycles():
        for e in c.edges:
            rename[e] = len(rename) + 1
    return g, t1, t2, cover, rename


def _relabel_cert(cert, rename):
    return DecompositionCertificate(
        cert.target.relabel(rename),
        tuple(Term(t.sign, monomial({rename[e]: k for e, k in t.monomial}),
                   t.generator.relabel(rename), t.kind, t.side) for t in cert.terms))


def test_2x5_tiling_and_cycle_binomials():
    g, t1, t2, cover, rename = _example_2x5()
    assert str(binomial_of_tilings(t1, t2).relabel(rename)) == "y1*y3*y5*y7*y9 - y2*y4*y6*y8*y10"
    c1, c2 = cover.long_cycles()
    assert str(binomial_of_cycle(c1).relabel(rename)) == "y1*y3 - y2*y4"
    assert str(binomial_of_cycle(c2).relabel(rename)) == "y5*y7*y9 - y6*y8*y10"
    assert binomial_of_cycle(c1, 2).relabel(rename) == binomial_of_cycle(c1).relabel(rename).reversed()


def test_2x5_cycle_decomposition_matches_worked_example():
    g, t1, t2, _, rename = _example_2x5()
    cert = _relabel_cert(cycle_decomposition(g, t1, t2), rename)
    assert cert.to_text() == (
        "target: y1*y3*y5*y7*y9 - y2*y4*y6*y8*y10\n"
        "+ y5*y7*y9 * ( y1*y3 - y2*y4 )\n"
        "+ y2*y4 * ( y5*y7*y9 - y6*y8*y10 )\n")
    assert verify_certificate(cert)
    assert [t.kind for t in cert.terms] == ["flip", "cycle"]


def test_2x5_quadratic_decomposition_has_three_flips():
    g, t1, t2, _, _ = _example_2x5()
    cert = quadratic_decomposition(g, t1, t2, fixture_region("box2x5"))
    assert len(cert) == 3
    assert cert.generators_only("flip")
    assert verify_certificate(cert, g)
    assert len(cert) >= len(connection_path(t1, t2, flip_moves(g)))


def test_two_cycle_binomial_is_zero():
    g = build_graph(Region.box(2, 2))
    t1, t2 = enumerate_tilings(g)
    cover = cycle_cover(g, t1, t1)
    assert all(c.length == 2 for c in cover.cycles)
    assert all(binomial_of_cycle(c).is_zero for c in cover.cycles)
    assert binomial_of_tilings(t1, t1).is_zero


def test_square_binomial_and_single_flip():
    g = build_graph(Region.box(2, 2))
    t1, t2 = enumerate_tilings(g)
    b = binomial_of_tilings(t1, t2)
    assert b.binomial_degree == 2 and b.is_homogeneous(g)
    cert = quadratic_decomposition(g, t1, t2)
    assert len(cert) == 1 and cert.terms[0].monomial == ()
    cyc = cycle_decomposition(g, t1, t2)
    assert len(cyc) == 1 and cyc.terms[0].kind == "flip"


def test_single_four_cycle_monomial_is_shared_dominoes():
    g = build_graph(Region.box(4, 3))
    ts = enumerate_tilings(g)
    for a, b in itertools.combinations(ts, 2):
        if len(cycle_cover(g, a, b).long_cycles()) == 1 and len(set(a.edges) ^ set(b.edges)) == 4:
            cert = cycle_decomposition(g, a, b)
            assert len(cert) == 1
            assert cert.terms[0].monomial == monomial(set(a.edges) & set(b.edges))
            return
    pytest.fail("no single-flip pair found")


def test_3x4_pair_with_two_four_cycles():
    g = build_graph(Region.box(4, 3))
    ts = enumerate_tilings(g)
    found = 0
    for a, b in itertools.combinations(ts, 2):
        lens = [c.length for c in cycle_cover(g, a, b).long_cycles()]
        if lens == [4, 4]:
            cert = cycle_decomposition(g, a, b)
            assert len(cert) == 2 and cert.generators_only("flip")
            assert verify_certificate(cert, g)
            found += 1
    assert found > 0


def test_2x3_six_cycle_needs_two_flips():
    g = build_graph(Region.box(3, 2))
    ts = enumerate_tilings(g)
    pairs = [(a, b) for a, b in itertools.combinations(ts, 2)
             if [c.length for c in cycle_cover(g, a, b).long_cycles()] == [6]]
    assert len(pairs) == 1
    a, b = pairs[0]
    cert = quadratic_decomposition(g, a, b, Region.box(3, 2))
    assert len(cert) == 2 and verify_certificate(cert, g)
    # the oriented flips chain a to b
    cur = Counter(dict(monomial(a.edges)))
    for step in flip_path_of(cert):
        cur.subtract(dict(step.u))
        cur.update(dict(step.v))
    assert monomial(+cur) == monomial(b.edges)


def test_identical_tilings_give_empty_certificates():
    g = build_graph(Region.box(3, 2))
    t = enumerate_tilings(g)[0]
    assert len(quadratic_decomposition(g, t, t)) == 0
    assert len(cycle_decomposition(g, t, t)) == 0
    assert verify_certificate(DecompositionCertificate(Binomial((), ()), ()))


@pytest.mark.parametrize("name", ["box2x3", "box3x4", "box4x4", "box2x5", "cube2x2x2", "trit", "ring3x3"])
def test_fixture_pairs_homogeneous_and_degree_matches_cover(name):
    r = fixture_region(name)
    g = build_graph(r)
    ts = enumerate_tilings(g)
    for a, b in itertools.combinations(ts, 2):
        bb = binomial_of_tilings(a, b)
        assert bb.is_homogeneous(g)
        cycles = cycle_cover(g, a, b).long_cycles()
        assert bb.binomial_degree == sum(c.length for c in cycles) // 2
        assert verify_certificate(cycle_decomposition(g, a, b))


@pytest.mark.parametrize("name", ["box3x4", "box4x4", "box4x5"])
def test_quadratic_decomposition_on_fixtures(name):
    r = fixture_region(name)
    g = build_graph(r)
    ts = enumerate_tilings(g)
    base = ts[0]
    for t in ts[1:]:
        cert = quadratic_decomposition(g, base, t, r)
        assert cert.generators_only("flip") and verify_certificate(cert, g)
        assert len(cert) >= len(connection_path(base, t, flip_moves(g)))


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_quadratic_decomposition_on_simply_connected_polyominoes(n):
    checked = 0
    for r in regions(n):
        if not is_simply_connected(r):
            continue
        g = build_graph(r)
        ts = enumerate_tilings(g)
        for a, b in itertools.combinations(ts, 2):
            assert verify_certificate(quadratic_decomposition(g, a, b, r), g)
            checked += 1
    assert checked > 0


def test_quadratic_decomposition_rejects_bad_regions():
    g3 = build_graph(Region.box(2, 2, 2))
    t1, t2 = enumerate_tilings(g3)[:2]
    with pytest.raises(RegionError):
        quadratic_decomposition(g3, t1, t2)
    ring = fixture_region("ring3x3")
    g = build_graph(ring)
    t1, t2 = enumerate_tilings(g)[:2]
    with pytest.raises(RegionError):
        quadratic_decomposition(g, t1, t2, ring)


def test_perturbed_certificate_is_rejected():
    g, t1, t2, _, _ = _example_2x5()
    cert = cycle_decomposition(g, t1, t2)
    t0 = cert.terms[0]
    bumped = Term(t0.sign, mono_mul(t0.monomial, ((t0.monomial[0][0], 1),)), t0.generator, t0.kind)
    bad = DecompositionCertificate(cert.target, (bumped,) + cert.terms[1:])
    assert not verify_certificate(bad)
    assert "coefficient" in certificate_mismatch(bad)
    flipped = DecompositionCertificate(cert.target, tuple(
        Term(-t.sign, t.monomial, t.generator, t.kind) for t in cert.terms))
    assert not verify_certificate(flipped)


def test_fake_flip_generator_rejected_with_graph():
    g = build_graph(Region.box(3, 2))
    genuine = {frozenset(c.edges) for c in chordless_cycles(g, max_length=4)}
    fake = Binomial.of([1, 7], [2, 6])
    assert frozenset({1, 2, 6, 7}) not in genuine
    cert = DecompositionCertificate(fake, (Term(1, (), fake, "flip"),))
    assert verify_certificate(cert)
    assert not verify_certificate(cert, g)
    assert "4-cycle" in certificate_mismatch(cert, g)


def test_text_round_trip():
    g = build_graph(Region.box(4, 4))
    ts = enumerate_tilings(g)
    cert = quadratic_decomposition(g, ts[0], ts[-1], Region.box(4, 4))
    back = parse_certificate(cert.to_text())
    assert back.target == cert.target
    assert [(t.sign, t.monomial, t.generator) for t in back.terms] == \
        [(t.sign, t.monomial, t.generator) for t in cert.terms]
    assert verify_certificate(back, g)


def test_parsers():
    assert parse_monomial("y_3*y1^2") == ((1, 2), (3, 1))
    assert parse_monomial("1") == ()
    assert parse_binomial("y1*y3 - y2*y4") == Binomial.of([1, 3], [2, 4])
    with pytest.raises(ValueError):
        parse_monomial("x1")
    with pytest.raises(ValueError):
        parse_certificate("+ y1 * ( y1 - y2 )")
    with pytest.raises(ValueError):
        parse_certificate("target: y1 - y2\nnonsense")


def test_normalized_and_degree():
    b = Binomial.of({1: 2, 3: 1}, {1: 1, 2: 1, 4: 1})
    m, u, v = b.normalized()
    assert m == ((1, 1),) and u == ((1, 1), (3, 1)) and v == ((2, 1), (4, 1))
    assert b.binomial_degree == 2 and b.degree == 3
