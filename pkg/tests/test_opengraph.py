import random

import pytest

import gen
import oracles
from obstructia import opengraph as og
from obstructia.errors import (
    BoundaryMismatch,
    CapExceeded,
    DanglingReference,
    NotAGraphHom,
    ParseError,
    TypeMismatch,
)

G_TEXT = """
inputs 1
outputs 1,2,3
vertex a1
vertex w1
vertex w2
vertex w3
edge a1 -> w1
edge w2 -> w3
in 1 = a1
out 1 = w1
out 2 = w2
out 3 = w3
"""

H_TEXT = """
inputs 1,2,3
outputs 1
vertex b1
vertex b2
vertex b3
vertex c1
edge b1 -> b2
edge b3 -> c1
in 1 = b1
in 2 = b2
in 3 = b3
out 1 = c1
"""


@pytest.fixture
def G():
    return og.parse_open_graph(G_TEXT)


@pytest.fixture
def H():
    return og.parse_open_graph(H_TEXT)


def identified(G):
    """G with the vertices under outputs 1 and 3 merged."""
    target = og.OpenGraph(
        ("1",),
        ("1", "2", "3"),
        ("a1", "w1", "w2"),
        frozenset({("a1", "w1"), ("w2", "w1")}),
        {"1": "a1"},
        {"1": "w1", "2": "w2", "3": "w1"},
    )
    return og.GraphHom(G, target, {"a1": "a1", "w1": "w1", "w2": "w2", "w3": "w1"})


class TestParsing:
    def test_round_trip(self, G, H):
        for g in (G, H):
            assert og.parse_open_graph(og.serialize_open_graph(g)) == g

    def test_bad_line(self):
        with pytest.raises(ParseError):
            og.parse_open_graph("inputs a\noutputs b\nvortex v")

    def test_dangling_leg(self):
        with pytest.raises(DanglingReference):
            og.parse_open_graph("inputs a\noutputs\nvertex v\nin a = w")


class TestReach:
    def test_left_part(self, G):
        assert og.reach(G).pairs == {("1", "1")}

    def test_right_part(self, H):
        assert og.reach(H).pairs == {("3", "1")}

    def test_composite_total(self, G, H):
        assert og.reach(og.compose(G, H)).pairs == {("1", "1")}

    def test_matches_dfs_oracle(self, seed):
        rng = random.Random(seed)
        for _ in range(25):
            g = gen.random_open_graph(rng, ("x", "y"), ("z",))
            assert og.reach(g).pairs == oracles.reach_pairs(g)


class TestCompose:
    def test_boundary_mismatch(self, G):
        with pytest.raises(BoundaryMismatch):
            og.compose(G, G)

    def test_glued_vertex_merges(self, G, H):
        gh = og.compose(G, H)
        # three glued vertices plus the two outer ones
        assert len(gh.vertices) == 5
        merged = [v for v in gh.vertices if "+" in v]
        assert len(merged) == 3

    def test_identity_composite_isomorphic(self, G):
        ident = og.identity_graph(("1", "2", "3"))
        assert oracles.open_graph_iso(og.compose(G, ident), G)
        left_ident = og.identity_graph(("1",))
        assert oracles.open_graph_iso(og.compose(left_ident, G), G)

    def test_vertex_count_with_injective_legs(self, seed):
        rng = random.Random(seed + 1)
        for _ in range(20):
            g, h = gen.random_composable_graphs(rng)
            # legs here are injective by construction (one vertex per label)
            gh = og.compose(g, h)
            expected = len(g.vertices) + len(h.vertices) - len(g.outputs)
            assert len(gh.vertices) == expected

    def test_associative_up_to_iso(self, seed):
        rng = random.Random(seed + 2)
        for _ in range(15):
            xs = ("x",)
            ys = ("y0", "y1")
            zs = ("z",)
            ws = ("w",)
            a = gen.random_open_graph(rng, xs, ys, max_inner=2)
            b = gen.random_open_graph(rng, ys, zs, max_inner=2)
            c = gen.random_open_graph(rng, zs, ws, max_inner=2)
            lhs = og.compose(og.compose(a, b), c)
            rhs = og.compose(a, og.compose(b, c))
            assert oracles.open_graph_iso(lhs, rhs)


class TestRelations:
    def test_parts_compose_to_nothing(self, G, H):
        assert og.compose_rel(og.reach(G), og.reach(H)).pairs == frozenset()

    def test_identity_relation(self):
        r = og.Relation(("a", "b"), ("c",), frozenset({("a", "c")}))
        ident = og.Relation(("c",), ("c",), frozenset({("c", "c")}))
        assert og.compose_rel(r, ident).pairs == r.pairs

    def test_type_mismatch(self):
        r = og.Relation(("a",), ("b",), frozenset())
        with pytest.raises(TypeMismatch):
            og.compose_rel(r, r)

    def test_against_triple_loop(self, seed):
        rng = random.Random(seed + 3)
        xs, ys, zs = ("x0", "x1"), ("y0", "y1", "y2"), ("z0",)
        for _ in range(25):
            rp = frozenset((x, y) for x in xs for y in ys if rng.random() < 0.4)
            sp = frozenset((y, z) for y in ys for z in zs if rng.random() < 0.4)
            r = og.Relation(xs, ys, rp)
            s = og.Relation(ys, zs, sp)
            assert og.compose_rel(r, s).pairs == oracles.compose_relation_pairs(rp, sp)


class TestLaxatorObstructions:
    def test_two_chain_gap(self, G, H):
        r = og.laxator_obstructions(G, H)
        assert len(r.invariant.poset.elements) == 2
        assert r.minimal == {"{(1,1)}"}
        assert not r.trivial

    def test_trivial_when_parts_account_for_whole(self):
        ident = og.identity_graph(("1", "2"))
        assert og.laxator_obstructions(ident, ident).trivial

    def test_gap_of_two(self):
        # the composite path zig-zags between the parts, so both z's are
        # reachable in the whole while the parts compose to nothing
        g = og.OpenGraph(
            ("x",),
            ("y0", "y1", "y2"),
            ("vx", "v0", "v1", "v2"),
            frozenset({("vx", "v0"), ("v1", "v2")}),
            {"x": "vx"},
            {"y0": "v0", "y1": "v1", "y2": "v2"},
        )
        h = og.OpenGraph(
            ("y0", "y1", "y2"),
            ("z0", "z1"),
            ("u0", "u1", "u2", "t0", "t1"),
            frozenset({("u0", "u1"), ("u2", "t0"), ("u2", "t1")}),
            {"y0": "u0", "y1": "u1", "y2": "u2"},
            {"z0": "t0", "z1": "t1"},
        )
        assert og.reach(g).pairs == {("x", "y0")}
        assert og.reach(h).pairs == {("y2", "z0"), ("y2", "z1")}
        assert og.compose_rel(og.reach(g), og.reach(h)).pairs == frozenset()
        assert og.reach(og.compose(g, h)).pairs == {("x", "z0"), ("x", "z1")}
        r = og.laxator_obstructions(g, h)
        assert r.minimal == {"{(x,z0)}", "{(x,z1)}"}

    def test_laxity_holds_on_random_pairs(self, seed):
        rng = random.Random(seed + 4)
        for _ in range(25):
            g, h = gen.random_composable_graphs(rng)
            composed = og.compose_rel(og.reach(g), og.reach(h))
            whole = og.reach(og.compose(g, h))
            assert composed.pairs <= whole.pairs

    def test_cap(self, seed):
        rng = random.Random(seed + 5)
        xs = tuple(f"x{i}" for i in range(4))
        zs = tuple(f"z{i}" for i in range(4))
        g = og.OpenGraph(xs, ("m",), tuple(f"i_{x}" for x in xs) + ("c",),
                         frozenset((f"i_{x}", "c") for x in xs),
                         {x: f"i_{x}" for x in xs}, {"m": "c"})
        h = og.OpenGraph(("m",), zs, ("c",) + tuple(f"o_{z}" for z in zs),
                         frozenset(("c", f"o_{z}") for z in zs),
                         {"m": "c"}, {z: f"o_{z}" for z in zs})
        assert len(og.reach(og.compose(g, h)).pairs) == 16
        with pytest.raises(CapExceeded):
            og.laxator_obstructions(g, h)


class TestPi1Laxator:
    def test_fixture_pair_trivial(self, G, H):
        assert og.pi1_laxator(G, H).trivial

    def test_identity_composite_trivial(self):
        ident = og.identity_graph(("1",))
        assert og.pi1_laxator(ident, ident).trivial

    def test_random_pairs_all_trivial(self, seed):
        rng = random.Random(seed + 6)
        done = 0
        while done < 20:
            g, h = gen.random_composable_graphs(rng)
            if len(og.reach(og.compose(g, h)).pairs) > 5:
                continue
            assert og.pi1_laxator(g, h).trivial
            done += 1


class TestGraphHom:
    def test_identified_hom_valid(self, G):
        hom = identified(G)
        assert og.reach(hom.target).pairs == {("1", "1"), ("1", "3")}

    def test_edge_not_preserved(self, G):
        bad = og.OpenGraph(
            G.inputs, G.outputs, G.vertices, frozenset({("a1", "w1")}),
            dict(G.in_leg), dict(G.out_leg),
        )
        with pytest.raises(NotAGraphHom):
            og.GraphHom(G, bad, {v: v for v in G.vertices})

    def test_boundary_must_match(self, G, H):
        with pytest.raises(BoundaryMismatch):
            og.GraphHom(G, H, {})

    def test_reach_monotone_under_homs(self, seed):
        rng = random.Random(seed + 7)
        for _ in range(25):
            g = gen.random_open_graph(rng, ("x",), ("y", "z"))
            hom = gen.random_vertex_merge_hom(rng, g)
            assert og.reach(hom.source).pairs <= og.reach(hom.target).pairs


class TestAct:
    def test_flow_trivialises(self, G, H):
        hom = identified(G)
        acted, pmap = og.act(hom, H)
        assert og.reach(acted).pairs == {("1", "1"), ("1", "3")}
        bp = pmap.target.basepoint
        assert pmap.mapping["{(1,1)}"] == bp

    def test_identity_hom_identity_map(self, G, H):
        hom = og.GraphHom(G, G, {v: v for v in G.vertices})
        _, pmap = og.act(hom, H)
        assert pmap.mapping == {e: e for e in pmap.source.poset.elements}

    def test_random_homs_preserve_basepoint(self, seed):
        rng = random.Random(seed + 8)
        done = 0
        while done < 20:
            g, h = gen.random_composable_graphs(rng)
            if len(og.reach(og.compose(g, h)).pairs) > 6:
                continue
            hom = gen.random_vertex_merge_hom(rng, g)
            _, pmap = og.act(hom, h)  # construction validates the pointed map
            assert pmap.mapping[pmap.source.basepoint] == pmap.target.basepoint
            done += 1


class TestDot:
    def test_emitter_shape(self, G):
        dot = og.open_graph_dot(G)
        assert dot.startswith("digraph")
        assert "style=dashed" in dot
        assert og.open_graph_dot(G) == dot
