from django.test import SimpleTestCase

from weighting.euler import balanced_split
from weighting.graphs import (
    Graph,
    generate_complete,
    generate_cycle,
    generate_gnp,
    generate_star,
)
from weighting.oracle import verify_split


class BalancedSplitTest(SimpleTestCase):
    """Test the Euler-tour balanced split."""

    def split_and_check(self, g):
        """Helper splitting g and asserting the balance property."""
        bipartition, exceptional = balanced_split(g)
        ok, diagnostics = verify_split(g, bipartition, exceptional)
        self.assertTrue(ok, diagnostics)
        return bipartition, exceptional

    def test_even_cycle(self):
        """Test C_6 splits into two perfect matchings with no exception."""
        g = generate_cycle(6)
        bipartition, exceptional = self.split_and_check(g)

        self.assertEqual(exceptional, frozenset())
        self.assertEqual(bipartition.side_degrees(g), ((1,) * 6, (1,) * 6))

    def test_odd_cycle_has_one_exceptional_vertex(self):
        """Test C_5: the tour start keeps both its edges on side 1."""
        g = generate_cycle(5)
        bipartition, exceptional = self.split_and_check(g)

        self.assertEqual(exceptional, frozenset({0}))
        d1, d2 = bipartition.side_degrees(g)
        self.assertEqual((d1[0], d2[0]), (2, 0))

    def test_star_uses_auxiliary_vertex(self):
        """Test K_{1,3}: odd degrees everywhere, no exceptional vertex."""
        g = generate_star(3)
        bipartition, exceptional = self.split_and_check(g)

        self.assertEqual(exceptional, frozenset())
        d1, d2 = bipartition.side_degrees(g)
        self.assertEqual(min(d1[0], d2[0]), 1)

    def test_tags_and_totality(self):
        """Test that every edge is placed and tagged."""
        g = generate_complete(7)
        bipartition, _ = balanced_split(g, tag="5°")

        self.assertTrue(bipartition.is_total(g))
        self.assertEqual(set(bipartition.provenance.values()), {"5°"})

    def test_isolated_vertices_and_components(self):
        """Test two triangles plus isolated vertices: one exception per triangle."""
        g = Graph.from_edges(8, [(0, 1), (1, 2), (0, 2), (4, 5), (5, 6), (4, 6)])
        _, exceptional = self.split_and_check(g)

        self.assertEqual(exceptional, frozenset({0, 4}))

    def test_empty_graph(self):
        """Test the edgeless graph."""
        bipartition, exceptional = balanced_split(Graph.from_edges(3, []))

        self.assertEqual(dict(bipartition.side), {})
        self.assertEqual(exceptional, frozenset())

    def test_deterministic(self):
        """Test that the split is a function of the graph."""
        g = generate_gnp(40, 0.3, seed=5)

        self.assertEqual(balanced_split(g), balanced_split(g))

    def test_random_graphs(self):
        """Test the balance property on 1000 seeded random graphs."""
        densities = (0.1, 0.3, 0.5)
        for i in range(1000):
            g = generate_gnp(2 + i % 59, densities[i % 3], seed=i)
            _, exceptional = self.split_and_check(g)

            for component in g.components():
                self.assertLessEqual(len(exceptional & set(component)), 1)
