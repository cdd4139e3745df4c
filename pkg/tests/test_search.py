import random

import pytest
from hypothesis import given, settings, strategies as st

from jgraphs import (
    CanonicalForm,
    ColoredPartition,
    Graph,
    Perm,
    automorphism_group,
    brute_force_automorphisms,
    canonical_form,
    check_automorphism,
    color_refinement,
    complete_graph,
    find_isomorphism,
    johnson_graph,
    kneser_graph,
    verify_isomorphism,
)
from jgraphs.perms import BRUTE_FORCE_LIMIT

from conftest import build_corpus


def relabel(g: Graph, p: Perm) -> Graph:
    return Graph.from_edges(g.n, [(p[u], p[v]) for u, v in g.edges()])


def random_graph(rng: random.Random, n: int, density: float) -> Graph:
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < density
    ]
    return Graph.from_edges(n, edges)


class TestColoredPartition:
    def test_from_cells_normalizes_order(self):
        # cells are presented by (size, smallest member)
        p = ColoredPartition.from_cells(5, [[3, 4], [0], [1, 2]])
        assert p.cells == ((0,), (1, 2), (3, 4))

    def test_uniform(self):
        p = ColoredPartition.uniform(4)
        assert p.cells == ((0, 1, 2, 3),)
        assert not p.is_discrete

    def test_discrete(self):
        p = ColoredPartition.from_cells(3, [[2], [0], [1]])
        assert p.is_discrete

    def test_rejects_non_partition(self):
        with pytest.raises(ValueError):
            ColoredPartition.from_cells(3, [[0, 1]])
        with pytest.raises(ValueError):
            ColoredPartition.from_cells(3, [[0, 1], [1, 2]])

    def test_color_lookup(self):
        p = ColoredPartition.from_cells(4, [[0, 1], [2, 3]])
        assert p.color[0] == p.color[1]
        assert p.color[0] != p.color[2]


class TestColorRefinement:
    def test_regular_graph_stays_uniform(self):
        refined = color_refinement(johnson_graph(5, 2))
        assert len(refined.cells) == 1

    def test_path_splits_by_eccentricity(self):
        refined = color_refinement(Graph.from_edges(3, [(0, 1), (1, 2)]))
        assert refined.cells == ((1,), (0, 2))

    def test_refinement_is_equitable(self):
        rng = random.Random(11)
        for _ in range(20):
            g = random_graph(rng, 9, 0.4)
            refined = color_refinement(g)
            for cell in refined.cells:
                for other in refined.cells:
                    counts = {
                        len(g.neighbors(v) & set(other)) for v in cell
                    }
                    assert len(counts) == 1

    def test_initial_colors_respected(self):
        g = complete_graph(4)
        init = ColoredPartition.from_cells(4, [[0], [1, 2, 3]])
        refined = color_refinement(g, init)
        assert refined.cells[0] == (0,)


class TestAutomorphismGroup:
    def test_matches_brute_force_on_corpus(self):
        for name, g in build_corpus().items():
            if g.n > BRUTE_FORCE_LIMIT:
                continue
            aut = automorphism_group(g)
            oracle = brute_force_automorphisms(g)
            assert aut.order == len(oracle), name
            assert set(aut.elements()) == set(oracle), name

    def test_every_generator_verified(self):
        aut = automorphism_group(johnson_graph(6, 3))
        for p in aut.generators:
            assert check_automorphism(johnson_graph(6, 3), p)

    def test_colored_stabilizer(self):
        g = kneser_graph(5, 2)
        fix0 = ColoredPartition.from_cells(g.n, [[0], [v for v in range(1, g.n)]])
        stab = automorphism_group(g, colors=fix0)
        assert stab.order == 12  # 120 / 10
        assert all(p[0] == 0 for p in stab.generators)

    def test_asymmetric_graph(self):
        g = Graph.from_edges(
            6, [(0, 1), (0, 3), (0, 5), (1, 2), (1, 3), (1, 4), (4, 5)]
        )
        assert len(brute_force_automorphisms(g)) == 1
        assert automorphism_group(g).order == 1

    def test_cap(self):
        from jgraphs import VertexCapExceeded

        with pytest.raises(VertexCapExceeded):
            automorphism_group(johnson_graph(6, 3), cap=10)


class TestCheckers:
    def test_check_automorphism_rejects_non_automorphism(self):
        g = Graph.from_edges(3, [(0, 1)])
        assert check_automorphism(g, Perm.from_cycles(3, (0, 1)))
        assert not check_automorphism(g, Perm.from_cycles(3, (1, 2)))

    def test_verify_isomorphism(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2)])
        h = Graph.from_edges(3, [(0, 2), (0, 1)])
        assert verify_isomorphism(g, h, Perm([1, 0, 2]))
        assert not verify_isomorphism(g, h, Perm.identity(3))


class TestFindIsomorphism:
    def test_petersen_complement_vs_johnson(self):
        from jgraphs import complement

        g = complement(kneser_graph(5, 2))
        h = johnson_graph(5, 2)
        p = find_isomorphism(g, h)
        assert p is not None
        assert verify_isomorphism(g, h, p)

    def test_relabeled_graphs(self):
        rng = random.Random(5)
        g = johnson_graph(6, 3)
        images = list(range(g.n))
        rng.shuffle(images)
        h = relabel(g, Perm(images))
        p = find_isomorphism(g, h)
        assert p is not None and verify_isomorphism(g, h, p)

    def test_non_isomorphic_same_degree_sequence(self):
        # C6 and two triangles: both 2-regular on 6 vertices
        c6 = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
        tt = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        assert find_isomorphism(c6, tt) is None

    def test_different_sizes(self):
        assert find_isomorphism(complete_graph(3), complete_graph(4)) is None


class TestCanonicalForm:
    def test_equal_for_relabelings(self):
        rng = random.Random(23)
        for _ in range(15):
            g = random_graph(rng, 8, 0.5)
            images = list(range(8))
            rng.shuffle(images)
            h = relabel(g, Perm(images))
            assert canonical_form(g) == canonical_form(h)

    def test_distinct_for_non_isomorphic(self):
        c6 = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
        tt = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        assert canonical_form(c6) != canonical_form(tt)

    def test_rebuilt_graph_is_isomorphic(self):
        g = kneser_graph(5, 2)
        cf = canonical_form(g)
        assert isinstance(cf, CanonicalForm)
        h = cf.graph()
        assert find_isomorphism(g, h) is not None

    def test_ordering_is_a_permutation(self):
        g = johnson_graph(5, 2)
        cf = canonical_form(g)
        assert sorted(cf.ordering) == list(range(g.n))

    @settings(max_examples=30, deadline=None)
    @given(st.data())
    def test_canonical_form_invariance_property(self, data):
        n = data.draw(st.integers(2, 7))
        edges = data.draw(
            st.lists(
                st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(
                    lambda e: e[0] != e[1]
                ),
                max_size=12,
            )
        )
        g = Graph.from_edges(n, [(min(u, v), max(u, v)) for u, v in edges])
        images = data.draw(st.permutations(range(n)))
        h = relabel(g, Perm(images))
        assert canonical_form(g) == canonical_form(h)
