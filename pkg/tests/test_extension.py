import itertools
import json
import random

import pytest

from raagext.extension import (BudgetExceeded, ExtGraphApprox, ExtVertex, act, approx_from_vertices,
                               diagnostics, ext_adjacent, ext_vertex, find_induced_in_extension,
                               graph_from_json, graph_to_json, grow, parse_ext_label,
                               recover_translation, retract, same_conjugate)
from raagext.graphs import (Graph, chromatic_number, clique_number, combine,
                            complete_bipartite_params, find_induced_embedding, induced_subgraph,
                            is_isomorphic, is_weakly_chordal, iter_induced_embeddings,
                            format_edge_list, shortest_induced_long_cycle, standard_graph)
from raagext.words import commutes, max_head, normalize

from conftest import atlas, grown
from oracles import ball, random_word

P4 = Graph("abcd", [("a", "b"), ("b", "c"), ("c", "d")])
C4 = Graph("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
C5 = Graph("abcde", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")])
P3 = Graph("abc", [("a", "b"), ("b", "c")])


def element(u: ExtVertex):
    """The group element ``rep^-1 base rep`` named by a conjugate."""
    g = u.rep.graph
    return normalize(g, [(u.base, 1)]).conjugate(u.rep)


def random_conjugate(rng, g, max_len=5):
    return ext_vertex(g, rng.choice(g.vertices), random_word(rng, g, max_len))


class TestVertices:
    def test_examples(self):
        assert ext_vertex(P4, "c", "d") == ExtVertex("c", normalize(P4, ""))
        assert ext_vertex(P4, "c", "a") == ExtVertex("c", normalize(P4, "a"))
        assert ext_vertex(P4, "b", "a b c").rep.is_identity()

    def test_rep_has_no_star_head(self):
        rng = random.Random(1)
        for _ in range(300):
            g = rng.choice((P4, C4, C5))
            u = random_conjugate(rng, g, 7)
            head, rest = max_head(u.rep, g.star(u.base))
            assert head.is_identity() and rest == u.rep
            assert ext_vertex(g, u.base, u.rep) == u

    def test_equality_is_group_equality(self):
        rng = random.Random(2)
        for _ in range(400):
            g = rng.choice((P4, C4, C5))
            u, v = random_conjugate(rng, g, 4), random_conjugate(rng, g, 4)
            assert (u == v) == (element(u) == element(v))

    def test_labels(self):
        u = ext_vertex(P4, "c", "a a")
        assert u.label == "c^(a a)" == str(u)
        assert parse_ext_label(P4, u.label) == u
        assert parse_ext_label(P4, "c") == ext_vertex(P4, "c")
        with pytest.raises(KeyError):
            parse_ext_label(P4, "q^(a)")
        with pytest.raises(KeyError):
            parse_ext_label(P4, "c(a)")
        with pytest.raises(KeyError):
            ext_vertex(P4, "z")

    def test_hashable(self):
        assert len({ext_vertex(P4, "c", "d"), ext_vertex(P4, "c"), ext_vertex(P4, "c", "a")}) == 2


class TestAdjacency:
    def test_examples(self):
        assert ext_adjacent(P4, ext_vertex(P4, "b"), ext_vertex(P4, "c", "a"))
        rng = random.Random(3)
        for _ in range(50):
            w = random_word(rng, P4, 5)
            assert not ext_adjacent(P4, ext_vertex(P4, "a"), ext_vertex(P4, "c", w))
        assert not ext_adjacent(P4, ext_vertex(P4, "c"), ext_vertex(P4, "c", "a"))

    def test_matches_commutation_of_elements(self):
        rng = random.Random(4)
        for _ in range(1500):
            g = rng.choice((P4, C4, C5, standard_graph("complete_bipartite", 2, 3)))
            u, v = random_conjugate(rng, g, 4), random_conjugate(rng, g, 4)
            if u == v:
                continue
            assert ext_adjacent(g, u, v) == commutes(element(u), element(v))

    def test_symmetric_irreflexive(self):
        rng = random.Random(5)
        for _ in range(300):
            g = rng.choice((P4, C5))
            u, v = random_conjugate(rng, g), random_conjugate(rng, g)
            assert ext_adjacent(g, u, v) == ext_adjacent(g, v, u)
            assert not ext_adjacent(g, u, u)


class TestSameConjugate:
    def test_examples(self):
        assert same_conjugate(C5, ext_vertex(C5, "a"), ext_vertex(C5, "c", "a"))
        assert not same_conjugate(C5, ext_vertex(C5, "c"), ext_vertex(C5, "c", "a"))
        assert same_conjugate(C5, ext_vertex(C5, "b"), ext_vertex(C5, "d", "a"))
        assert not same_conjugate(C5, ext_vertex(C5, "c"), ext_vertex(C5, "d", "a"))

    def test_against_ball(self):
        rng = random.Random(9)
        for g in (P4, C5):
            translates = ball(g, g.vertices, 4)
            for _ in range(60):
                u, v = random_conjugate(rng, g, 2), random_conjugate(rng, g, 2)
                expect = any(ext_vertex(g, u.base, x) == u and ext_vertex(g, v.base, x) == v
                             for x in translates)
                assert same_conjugate(g, u, v) == expect


class TestAction:
    def test_examples(self):
        assert act(ext_vertex(P4, "c", "a"), normalize(P4, "a^-1")) == ext_vertex(P4, "c")
        assert retract(ext_vertex(P4, "c", "a a")) == "c"
        assert act(ext_vertex(P4, "b"), normalize(P4, "c")) == ext_vertex(P4, "b")

    def test_right_action_and_automorphism(self):
        rng = random.Random(6)
        for _ in range(400):
            g = rng.choice((P4, C4, C5))
            u, v = random_conjugate(rng, g), random_conjugate(rng, g)
            x = normalize(g, random_word(rng, g, 4))
            y = normalize(g, random_word(rng, g, 4))
            assert act(act(u, x), y) == act(u, x * y)
            assert element(act(u, x)) == element(u).conjugate(x)
            if u != v:
                assert ext_adjacent(g, u, v) == ext_adjacent(g, act(u, x), act(v, x))

    def test_mismatched_graph(self):
        with pytest.raises(ValueError):
            act(ext_vertex(P4, "a"), normalize(C4, "a"))


class TestGrowRadius:
    def test_c4_radius_one(self):
        a = grow(C4, radius=1)
        assert len(a) == 12
        assert complete_bipartite_params(a.graph) == (6, 6)
        side = {u.label for u in a.vertices if u.base in "ac"}
        assert side == {"a", "a^(c)", "a^(c^-1)", "c", "c^(a)", "c^(a^-1)"}

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_complete_is_finite(self, n):
        k = standard_graph("complete", n)
        for r in range(4):
            a = grow(k, radius=r)
            assert len(a) == n and a.graph == k

    def test_p3_star(self):
        a = grow(P3, radius=2)
        centre = ext_vertex(P3, "b")
        leaves = [u for u in a.vertices if u != centre]
        assert len(leaves) >= 5
        assert all(a.adjacent(centre, u) for u in leaves)
        assert all(not a.adjacent(u, v) for u, v in itertools.combinations(leaves, 2))

    def test_contains_base_copy(self):
        for g in (P4, C5, C4):
            a = grow(g, radius=2)
            emb = {v: ext_vertex(g, v).label for v in g.vertices}
            assert induced_subgraph(a.graph, emb.values()).relabel({y: x for x, y in emb.items()}) == g

    def test_reps_are_bounded_and_all_present(self):
        # brute force: canonicalise every word of length <= 2
        a = grow(P4, radius=2)
        expect = set()
        letters = [(v, s) for v in P4.vertices for s in (1, -1)]
        for n in range(3):
            for w in itertools.product(letters, repeat=n):
                for v in P4.vertices:
                    u = ext_vertex(P4, v, list(w))
                    if len(u.rep) <= 2:
                        expect.add(u)
        assert set(a.vertices) == expect

    def test_stored_edges_are_exact(self):
        for g in atlas(4):
            for r in (1, 2):
                assert grow(g, radius=r).check() == []

    def test_fast_fill_matches_pairwise(self):
        for g in atlas(5):
            a = grown(g, 1)
            b = approx_from_vertices(g, a.vertices, a.provenance, pairwise=True)
            assert a.graph == b.graph
        for g in atlas(4):
            a = grown(g, 2)
            b = approx_from_vertices(g, a.vertices, a.provenance, pairwise=True)
            assert a.graph == b.graph

    def test_budget(self):
        with pytest.raises(BudgetExceeded) as info:
            grow(C5, radius=3, budget=50)
        assert info.value.partial is not None and not info.value.partial.usable
        with pytest.raises(ValueError):
            grow(C5, radius=1, budget=3)
        with pytest.raises(ValueError):
            grow(C5)
        with pytest.raises(ValueError):
            grow(C5, radius=1, doubling=["a"])
        with pytest.raises(ValueError):
            grow(C5, radius=-1)


class TestGrowDoubling:
    def test_single_double_is_star_double(self):
        from raagext.graphs import double_along_star
        for g in (P4, C5, C4):
            for v in g.vertices:
                a = grow(g, doubling=[v])
                assert a.check() == []
                assert is_isomorphic(a.graph, double_along_star(g, v))

    def test_sequence_and_labels(self):
        a = grow(C5, doubling=["a", "c^(a)"])
        assert a.provenance == {"kind": "doubling", "sequence": ["a", "c^(a)"]}
        assert a.check() == []
        assert len(a) > len(grow(C5, doubling=["a"]))
        with pytest.raises(KeyError):
            grow(C5, doubling=["c^(a b)"])

    def test_c5_double_has_c6(self):
        a = grow(C5, doubling=["a"])
        assert find_induced_embedding(standard_graph("cycle", 6), a.graph) is not None

    def test_consistent_with_radius(self):
        rng = random.Random(7)
        for g in (P4, C5, C4, standard_graph("path", 5)):
            seq = []
            a = grow(g, doubling=[])
            for _ in range(2):
                seq.append(rng.choice(a.vertices).label)
                a = grow(g, doubling=seq)
            assert a.check() == []
            r = max(len(u.rep) for u in a.vertices)
            if r > 3:
                continue
            big = grow(g, radius=r, budget=100_000)
            assert all(u in big for u in a.vertices)
            labels = [u.label for u in a.vertices]
            assert induced_subgraph(big.graph, labels) == a.graph

    def test_budget(self):
        with pytest.raises(BudgetExceeded) as info:
            grow(C5, doubling=["a", "b", "c", "d"], budget=12)
        assert not info.value.partial.usable


class TestClosures:
    def test_join_distributes(self):
        rng = random.Random(8)
        small = atlas(3)
        for _ in range(15):
            g1, g2 = rng.choice(small), rng.choice(small)
            j = combine("join", g1, g2)
            for r in (1, 2):
                lhs = grow(j, radius=r).graph
                rhs = combine("join", grow(g1, radius=r).graph, grow(g2, radius=r).graph)
                assert is_isomorphic(lhs, rhs)

    def test_induced_subgraphs_respected(self):
        for g in atlas(5)[::4]:
            for k in range(1, len(g)):
                sub_vertices = g.vertices[:k]
                lam = induced_subgraph(g, sub_vertices)
                small = grow(lam, radius=2)
                big = grown(g, 2)
                image = [ext_vertex(g, u.base, [(x.vertex, x.sign) for x in u.rep.letters])
                         for u in small.vertices]
                assert len(set(image)) == len(image)
                assert all(u in big for u in image)
                sub = induced_subgraph(big.graph, [u.label for u in image])
                assert sub.relabel({v.label: u.label for u, v in zip(small.vertices, image)}) == small.graph

    def test_triangle_and_square_free(self):
        for g in atlas(6):
            tri = clique_number(g) <= 2
            sq = shortest_induced_long_cycle(g, 4, 4) is None
            if not (tri or sq):
                continue
            for r in (1, 2):
                a = grown(g, r).graph
                if tri:
                    assert clique_number(a) <= 2
                if sq:
                    assert shortest_induced_long_cycle(a, 4, 4) is None

    def test_weakly_chordal(self):
        for g in atlas(6):
            if not is_weakly_chordal(g):
                continue
            for r in (1, 2):
                assert is_weakly_chordal(grown(g, r).graph, max_len=8)

    def test_not_weakly_chordal_stays(self):
        assert not is_weakly_chordal(grow(C5, radius=1).graph, max_len=8)


class TestSearch:
    def test_c6_in_c5(self):
        emb = find_induced_in_extension(standard_graph("cycle", 6), C5, budget=200)
        assert emb is not None and len(set(emb.values())) == 6

    def test_c4_never_in_c5(self):
        assert find_induced_in_extension(C4, C5, budget=400) is None

    def test_claw_in_p4(self):
        claw = standard_graph("complete_bipartite", 1, 3)
        emb = find_induced_in_extension(claw, P4, budget=200)
        assert emb is not None
        verts = list(emb.values())
        for (x, u), (y, v) in itertools.combinations(emb.items(), 2):
            assert ext_adjacent(P4, u, v) == claw.has_edge(x, y)
        explicit = [ext_vertex(P4, "b"), ext_vertex(P4, "c"), ext_vertex(P4, "c", "a"),
                    ext_vertex(P4, "c", "a a")]
        assert [ext_adjacent(P4, explicit[0], u) for u in explicit[1:]] == [True] * 3
        assert not any(ext_adjacent(P4, u, v) for u, v in itertools.combinations(explicit[1:], 2))
        assert len(verts) == 4


class TestRigidity:
    @pytest.mark.parametrize("n", [5, 6])
    def test_cycles_recovered(self, n):
        cyc = standard_graph("cycle", n)
        a = grown(cyc, 2)
        found = 0
        for emb in iter_induced_embeddings(cyc, a.graph):
            verts = [a.vertex(emb[v]) for v in cyc.vertices]
            g = recover_translation(verts)
            assert g is not None
            assert all(act(u, g).rep.is_identity() for u in verts)
            found += 1
        assert found > 0

    def test_empty(self):
        with pytest.raises(ValueError):
            recover_translation([])


class TestDiagnostics:
    def test_c5(self):
        d = diagnostics(grow(C5, radius=2))
        assert d["chromatic_number"] == 3
        assert d["vertices"] == 145
        assert d["distances"].shape == (145, 145)
        assert sum(d["growth"].values()) == 145

    def test_p4_thin_bigons(self):
        d = diagnostics(grow(P4, radius=2))
        assert d["thin_bigon_violations"] == []
        assert d["chromatic_number"] == 2

    def test_star_separation_in_double(self):
        a = grow(C5, doubling=["a"])
        d = diagnostics(a, max_pairs=10_000)
        cross = d["star_separation_checks"]
        assert cross and all(c["separator"] is not None for c in cross)
        assert all(not same_conjugate(C5, a.vertex(x), a.vertex(y)) for x, y in (c["pair"] for c in cross))
        # every reported separator really disconnects the pair
        g = a.graph
        for c in cross:
            x, y = c["pair"]
            cut = g.star(c["separator"])
            rest = induced_subgraph(g, [v for v in g.vertices if v not in cut])
            from raagext.graphs import connected_components
            comp = next(comp for comp in connected_components(rest) if x in comp)
            assert y not in comp

    def test_distances_match_bfs(self):
        import networkx as nx
        from conftest import to_nx
        a = grow(P4, radius=1)
        d = diagnostics(a)
        G = to_nx(a.graph)
        lengths = dict(nx.all_pairs_shortest_path_length(G))
        for i, u in enumerate(a.graph.vertices):
            for j, v in enumerate(a.graph.vertices):
                assert d["distances"][i, j] == lengths[u].get(v, -1)


class TestFormats:
    def test_json_round_trip(self):
        a = grow(C5, doubling=["a", "c^(a)"])
        data = json.loads(json.dumps(a.to_json()))
        assert set(data) == {"base_graph", "provenance", "vertices", "edges"}
        b = ExtGraphApprox.from_json(data)
        assert b.vertices == a.vertices and b.graph == a.graph and b.provenance == a.provenance
        assert b.check() == []

    def test_tampered_json_detected(self):
        data = grow(P4, radius=1).to_json()
        data["edges"].append([0, 2])
        assert ExtGraphApprox.from_json(data).check() != []

    def test_graph_json(self):
        assert graph_from_json(graph_to_json(C5)) == C5
        assert graph_from_json(format_edge_list(C5)) == C5

    def test_dot(self):
        dot = grow(P4, radius=1).to_dot()
        assert dot.startswith("graph Ext {")
        assert '  "c^(a)";' in dot
        assert '"b" -- "c^(a)";' in dot or '"c^(a)" -- "b";' in dot


def test_chromatic_small():
    for g in atlas(4, connected=True):
        assert chromatic_number(grown(g, 2).graph) == chromatic_number(g)
