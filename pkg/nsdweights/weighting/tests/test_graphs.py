import math

from django.test import SimpleTestCase

from weighting.exceptions import (
    DuplicateEdgeError,
    EdgeCountError,
    GenerationError,
    GraphError,
    MalformedLineError,
    ParameterError,
    SelfLoopError,
    UnknownEdgeError,
    VertexRangeError,
)
from weighting.graphs import (
    EdgeBipartition,
    Graph,
    generate_bipartite_gnp,
    generate_complete,
    generate_complete_bipartite,
    generate_cycle,
    generate_gnp,
    generate_path,
    generate_regular,
    generate_star,
    load_edge_list,
    serialize_edge_list,
)


class GraphTestSetup(SimpleTestCase):
    """Base class for graph tests with a few small graphs."""

    def setUp(self):
        """Create the small graphs shared by the tests."""
        self.triangle = generate_complete(3)
        self.path = generate_path(4)
        self.square = generate_cycle(4)

    def assertSimple(self, g):
        """Helper asserting that g has no loops and no repeated edges."""
        self.assertEqual(len(set(g.edges)), g.m)
        for u, v in g.edges:
            self.assertLess(u, v)
        self.assertEqual(sum(g.degrees), 2 * g.m)


class GraphStructureTest(GraphTestSetup):
    """Test the Graph value type."""

    def test_edges_are_normalized(self):
        """Test that from_edges stores every edge as (min, max)."""
        g = Graph.from_edges(3, [(2, 0), (1, 2)])

        self.assertEqual(g.edges, ((0, 2), (1, 2)))
        self.assertEqual(g.endpoints(1), (1, 2))

    def test_degrees_and_min_degree(self):
        """Test degree bookkeeping on a path."""
        self.assertEqual(self.path.degrees, (1, 2, 2, 1))
        self.assertEqual(self.path.min_degree(), 1)
        self.assertEqual(self.path.neighbours(1), [0, 2])

    def test_incident_lists_edge_ids(self):
        """Test that adjacency carries edge ids in increasing order."""
        self.assertEqual(self.triangle.incident(0), ((1, 0), (2, 1)))

    def test_self_loop_rejected(self):
        """Test that a self-loop is rejected."""
        with self.assertRaises(GraphError):
            Graph.from_edges(2, [(1, 1)])

    def test_duplicate_rejected(self):
        """Test that a repeated edge is rejected in either orientation."""
        with self.assertRaises(GraphError):
            Graph.from_edges(2, [(0, 1), (1, 0)])

    def test_unknown_edge(self):
        """Test that endpoints of a missing edge id raise."""
        with self.assertRaises(UnknownEdgeError):
            self.triangle.endpoints(3)

    def test_components(self):
        """Test components sorted by smallest vertex, isolated ones included."""
        g = Graph.from_edges(5, [(3, 4), (0, 1)])

        self.assertEqual(g.components(), [[0, 1], [2], [3, 4]])

    def test_spanning_subgraph_keeps_vertices(self):
        """Test spanning_subgraph keeps all n vertices and maps edge ids."""
        sub, kept = self.square.spanning_subgraph({3, 1})

        self.assertEqual(sub.n, 4)
        self.assertEqual(kept, (1, 3))
        self.assertEqual(sub.edges, (self.square.edges[1], self.square.edges[3]))

    def test_edge_subgraph_relabels(self):
        """Test edge_subgraph compacts the touched vertices."""
        g = Graph.from_edges(6, [(1, 5), (3, 5)])
        sub, vertices, kept = g.edge_subgraph({0, 1})

        self.assertEqual(vertices, (1, 3, 5))
        self.assertEqual(kept, (0, 1))
        self.assertEqual(sub.edges, ((0, 2), (1, 2)))

    def test_to_networkx_carries_edge_ids(self):
        """Test the networkx view keeps isolated vertices and edge ids."""
        g = Graph.from_edges(3, [(0, 1)])
        nx_graph = g.to_networkx()

        self.assertEqual(nx_graph.number_of_nodes(), 3)
        self.assertEqual(nx_graph.edges[0, 1]["eid"], 0)


class EdgeBipartitionTest(GraphTestSetup):
    """Test the EdgeBipartition value type."""

    def test_side_degrees(self):
        """Test per-side degree vectors."""
        bip = EdgeBipartition.build({0: 1, 1: 2, 2: 1, 3: 2}, {})

        self.assertTrue(bip.is_total(self.square))
        self.assertEqual(bip.side_degrees(self.square), ((1, 1, 1, 1), (1, 1, 1, 1)))

    def test_bad_side_rejected(self):
        """Test that a side outside {1, 2} is rejected."""
        with self.assertRaises(GraphError):
            EdgeBipartition.build({0: 3}, {})

    def test_unknown_tag_rejected(self):
        """Test that an unknown provenance tag is rejected."""
        with self.assertRaises(GraphError):
            EdgeBipartition.build({0: 1}, {0: "7°"})

    def test_merge(self):
        """Test merging two partial bipartitions."""
        a = EdgeBipartition.build({0: 1}, {0: "H-prime"})
        b = EdgeBipartition.build({1: 2}, {1: "1°"})
        merged = EdgeBipartition.merge(a, b)

        self.assertEqual(dict(merged.side), {0: 1, 1: 2})
        self.assertEqual(merged.edges_on(2), frozenset({1}))
        self.assertFalse(merged.is_total(self.triangle))


class EdgeListFormatTest(GraphTestSetup):
    """Test reading and writing the edge-list format."""

    def test_load(self):
        """Test a well-formed file with blank lines."""
        g = load_edge_list("3 2\n\n0 1\n2 1\n")

        self.assertEqual(g.n, 3)
        self.assertEqual(g.edges, ((0, 1), (1, 2)))

    def test_serialize_then_load(self):
        """Test that a serialized graph reads back identically."""
        g = generate_gnp(12, 0.4, seed=3)

        self.assertEqual(load_edge_list(serialize_edge_list(g)), g)

    def test_empty_text(self):
        """Test that an empty file lacks its header."""
        with self.assertRaises(MalformedLineError):
            load_edge_list("")

    def test_bad_header(self):
        """Test a header that is not two integers."""
        with self.assertRaises(MalformedLineError) as cm:
            load_edge_list("three 1\n0 1\n")
        self.assertEqual(cm.exception.line, 1)

    def test_edge_count_mismatch(self):
        """Test a header announcing more edges than present."""
        with self.assertRaises(EdgeCountError):
            load_edge_list("3 3\n0 1\n1 2\n")

    def test_vertex_out_of_range(self):
        """Test that the offending line is named."""
        with self.assertRaises(VertexRangeError) as cm:
            load_edge_list("3 2\n0 1\n1 3\n")
        self.assertEqual(cm.exception.line, 3)

    def test_self_loop(self):
        """Test a self-loop line."""
        with self.assertRaises(SelfLoopError):
            load_edge_list("2 1\n1 1\n")

    def test_duplicate(self):
        """Test a repeated edge in reversed orientation."""
        with self.assertRaises(DuplicateEdgeError) as cm:
            load_edge_list("3 2\n0 1\n1 0\n")
        self.assertEqual(cm.exception.line, 3)

    def test_malformed_edge_line(self):
        """Test an edge line with three tokens."""
        with self.assertRaises(MalformedLineError):
            load_edge_list("3 1\n0 1 2\n")


class GeneratorTest(GraphTestSetup):
    """Test the graph generators."""

    def test_complete(self):
        """Test K_k has k(k-1)/2 edges."""
        g = generate_complete(16)

        self.assertEqual(g.m, 120)
        self.assertEqual(set(g.degrees), {15})

    def test_complete_bipartite(self):
        """Test K_{a,b} degrees on both sides."""
        g = generate_complete_bipartite(3, 5)

        self.assertEqual(g.m, 15)
        self.assertEqual(g.degrees, (5,) * 3 + (3,) * 5)

    def test_star_and_cycle(self):
        """Test star centre degree and cycle regularity."""
        self.assertEqual(generate_star(4).degrees, (4, 1, 1, 1, 1))
        self.assertEqual(set(generate_cycle(7).degrees), {2})

    def test_cycle_too_short(self):
        """Test that C_2 is refused."""
        with self.assertRaises(ParameterError):
            generate_cycle(2)

    def test_gnp_is_seeded(self):
        """Test that G(n, p) depends only on the seed."""
        a = generate_gnp(30, 0.3, seed=11)
        b = generate_gnp(30, 0.3, seed=11)

        self.assertEqual(a, b)
        self.assertSimple(a)

    def test_gnp_extremes(self):
        """Test p = 0 and p = 1."""
        self.assertEqual(generate_gnp(6, 0.0, seed=0).m, 0)
        self.assertEqual(generate_gnp(6, 1.0, seed=0).m, 15)

    def test_gnp_bad_probability(self):
        """Test that p outside [0, 1] is refused."""
        with self.assertRaises(ParameterError):
            generate_gnp(5, 1.5, seed=0)

    def test_gnp_edge_count(self):
        """Test G(1000, 1/2): the edge count lies within 3 sigma of its mean."""
        pairs = 1000 * 999 // 2
        sigma = math.sqrt(pairs * 0.25)
        g = generate_gnp(1000, 0.5, seed=7)

        self.assertLess(abs(g.m - pairs / 2), 3 * sigma)

    def test_bipartite_gnp_has_no_inner_edges(self):
        """Test that every edge crosses the two sides."""
        g = generate_bipartite_gnp(10, 12, 0.5, seed=2)

        for u, v in g.edges:
            self.assertLess(u, 10)
            self.assertGreaterEqual(v, 10)

    def test_regular(self):
        """Test random regular graphs are simple, regular and seeded."""
        for n, d, seed in ((20, 3, 0), (30, 8, 1), (12, 5, 2)):
            g = generate_regular(n, d, seed)

            self.assertSimple(g)
            self.assertEqual(set(g.degrees), {d})
            self.assertEqual(g, generate_regular(n, d, seed))

    def test_regular_on_four_vertices_is_k4(self):
        """Test that the only simple 3-regular graph on 4 vertices comes out."""
        for seed in range(5):
            for strict in (False, True):
                g = generate_regular(4, 3, seed, strict=strict)

                self.assertEqual(g.edges, generate_complete(4).edges, (seed, strict))

    def test_strict_regular(self):
        """Test whole-round rejection on small degrees."""
        for n, d, seed in ((20, 3, 0), (16, 4, 1)):
            g = generate_regular(n, d, seed, strict=True)

            self.assertSimple(g)
            self.assertEqual(set(g.degrees), {d})
            self.assertEqual(g, generate_regular(n, d, seed, strict=True))

    def test_regular_odd_product(self):
        """Test that odd n*d is refused."""
        with self.assertRaises(GenerationError):
            generate_regular(7, 3, seed=0)

    def test_regular_degree_too_large(self):
        """Test that d >= n is refused."""
        with self.assertRaises(GenerationError):
            generate_regular(6, 6, seed=0)
