import dataclasses
import json
from pathlib import Path

from django.test import SimpleTestCase, tag

from weighting.certificates import build_certificate
from weighting.exceptions import (
    CertificateStructureError,
    InstanceTooLargeError,
    MissingWeightError,
    ParameterError,
)
from weighting.graphs import (
    EdgeBipartition,
    Graph,
    generate_complete,
    generate_cycle,
    generate_gnp,
    generate_path,
)
from weighting.oracle import (
    brute_force_22,
    brute_force_nsd,
    connected_graphs,
    verify_certificate,
    verify_nsd,
    verify_split,
    weighted_degrees,
)
from weighting.utils import make_rng

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures" / "oracle_cases.json"


class OracleTestSetup(SimpleTestCase):
    """Base class for oracle tests."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.cases = json.loads(FIXTURES.read_text(encoding="utf-8"))

    def graph(self, case):
        """Helper: the fixture's graph."""
        return Graph.from_edges(case["n"], case["edges"])

    def c4_certificate(self):
        """Helper: the first {1,2}-decomposition of C_4."""
        g = generate_cycle(4)
        return g, brute_force_22(g)


class VerifyNSDTest(OracleTestSetup):
    """Test the NSD checker."""

    def test_path(self):
        """Test P_3 with weights (1, 2): sums 1, 3, 2."""
        g = generate_path(3)

        self.assertEqual(weighted_degrees(g, {0: 1, 1: 2}), (1, 3, 2))
        self.assertEqual(verify_nsd(g, {0: 1, 1: 2}), (True, ()))

    def test_triangle_all_ones(self):
        """Test that the constant weighting of K_3 conflicts everywhere."""
        g = generate_complete(3)

        self.assertEqual(verify_nsd(g, dict.fromkeys(range(3), 1)), (False, (0, 1, 2)))

    def test_empty_graph(self):
        """Test that the edgeless graph is trivially distinguished."""
        self.assertEqual(verify_nsd(Graph.from_edges(4, []), {}), (True, ()))

    def test_missing_weight(self):
        """Test that every edge must be weighted."""
        with self.assertRaises(MissingWeightError):
            verify_nsd(generate_path(3), {0: 1})

    def test_matches_edge_driven_sums(self):
        """Test vertex-driven sums against a direct pass over the edges."""
        rng = make_rng(0)
        for seed in range(20):
            g = generate_gnp(15, 0.4, seed=seed)
            w = {eid: int(rng.integers(1, 4)) for eid in range(g.m)}
            expected = [0] * g.n
            for eid, (u, v) in enumerate(g.edges):
                expected[u] += w[eid]
                expected[v] += w[eid]

            self.assertEqual(weighted_degrees(g, w), tuple(expected))


class BruteForceNSDTest(OracleTestSetup):
    """Test exhaustive NSD search against the fixtures."""

    def test_fixture_cases(self):
        """Test the first weighting in lexicographic order, or none."""
        for case in self.cases["nsd"]:
            g = self.graph(case)
            found = brute_force_nsd(g, case["k"])
            expected = case["expected"]

            with self.subTest(name=case["name"], k=case["k"]):
                self.assertEqual(found, None if expected is None else tuple(expected))
                if found is not None:
                    self.assertTrue(verify_nsd(g, dict(enumerate(found)))[0])

    def test_negative_cases_have_no_witness(self):
        """Test random weightings of the negative cases against the checker."""
        rng = make_rng(1)
        for case in self.cases["nsd"]:
            if case["expected"] is not None:
                continue
            g = self.graph(case)
            for _ in range(1000):
                w = {eid: int(rng.integers(1, case["k"], endpoint=True)) for eid in range(g.m)}
                self.assertFalse(verify_nsd(g, w)[0])

    def test_threshold(self):
        """Test that 4^15 weightings of K_6 are refused."""
        with self.assertRaises(InstanceTooLargeError):
            brute_force_nsd(generate_complete(6), 4)

    def test_bad_k(self):
        """Test that k must be positive."""
        with self.assertRaises(ParameterError):
            brute_force_nsd(generate_path(3), 0)

    def test_small_connected_graphs_take_three_weights(self):
        """Test that every connected graph on 3 to 5 vertices has an NSD 3-weighting."""
        for g in connected_graphs(5):
            found = brute_force_nsd(g, 3)

            self.assertIsNotNone(found, g.edges)
            self.assertTrue(verify_nsd(g, dict(enumerate(found)))[0])

    @tag("slow")
    def test_six_vertex_connected_graphs_take_three_weights(self):
        """Test all 112 connected graphs on 6 vertices with weights from {1, 2, 3}."""
        graphs = connected_graphs(6, min_n=6)

        self.assertEqual(len(graphs), self.cases["connected_graph_counts"]["6"])
        for g in graphs:
            found = brute_force_nsd(g, 3)

            self.assertIsNotNone(found, g.edges)
            self.assertTrue(verify_nsd(g, dict(enumerate(found)))[0])


class BruteForce22Test(OracleTestSetup):
    """Test exhaustive search for {1,2}-decompositions."""

    def test_fixture_cases(self):
        """Test the first decomposition in lexicographic order, or none."""
        for case in self.cases["std22"]:
            g = self.graph(case)
            cert = brute_force_22(g)
            expected = case["expected"]

            with self.subTest(name=case["name"]):
                if expected is None:
                    self.assertIsNone(cert)
                    continue
                self.assertEqual(
                    tuple(cert.bipartition.side[e] for e in range(g.m)),
                    tuple(expected["sides"]),
                )
                self.assertEqual(
                    tuple(dict(w) for w in cert.weights),
                    tuple(
                        {int(e): x for e, x in side.items()}
                        for side in expected["weights"]
                    ),
                )
                self.assertEqual(cert.sums, tuple(tuple(s) for s in expected["sums"]))
                self.assertEqual(verify_certificate(g, cert), (True, ()))

    def test_edge_limit(self):
        """Test that K_7 has more than 20 edges."""
        with self.assertRaises(InstanceTooLargeError):
            brute_force_22(generate_complete(7))


class VerifyCertificateTest(OracleTestSetup):
    """Test the certificate checker, one broken condition at a time."""

    def test_conflict(self):
        """Test that lowering edge 3 to weight 1 creates a conflict on edge 0."""
        g, cert = self.c4_certificate()
        weights = ({**cert.weights[0], 3: 1}, {})
        broken = build_certificate(g, cert.bipartition, weights, cert.verdict)
        ok, diagnostics = verify_certificate(g, broken)

        self.assertFalse(ok)
        self.assertEqual(diagnostics[0], "(d) side 1: edge 0 (0, 1) joins equal sums 2")

    def test_recorded_sums_mismatch(self):
        """Test that a wrong recorded sum is reported alone."""
        g, cert = self.c4_certificate()
        broken = dataclasses.replace(cert, sums=((9, 2, 3, 4), (0, 0, 0, 0)))

        self.assertEqual(
            verify_certificate(g, broken),
            (False, ("(c) side 1: vertex 0 records s=9, weights give 3",)),
        )

    def test_weight_out_of_range(self):
        """Test that weight 3 is not a {1,2}-weight."""
        g, cert = self.c4_certificate()
        broken = dataclasses.replace(cert, weights=({**cert.weights[0], 0: 3}, {}))
        ok, diagnostics = verify_certificate(g, broken)

        self.assertFalse(ok)
        self.assertIn("(b) side 1: edge 0 has weight 3", diagnostics)

    def test_edge_on_neither_side(self):
        """Test that a bipartition must cover every edge."""
        g, cert = self.c4_certificate()
        side = {e: s for e, s in cert.bipartition.side.items() if e != 3}
        weights = {e: w for e, w in cert.weights[0].items() if e != 3}
        broken = dataclasses.replace(
            cert, bipartition=EdgeBipartition.build(side, {}), weights=(weights, {})
        )

        self.assertEqual(
            verify_certificate(g, broken), (False, ("(a) edge 3 is on neither side",))
        )

    def test_sums_length(self):
        """Test that each side records one sum per vertex."""
        g, cert = self.c4_certificate()
        broken = dataclasses.replace(cert, sums=((3, 2, 3), (0, 0, 0, 0)))

        with self.assertRaises(CertificateStructureError):
            verify_certificate(g, broken)


class VerifySplitTest(OracleTestSetup):
    """Test the balanced split checker on bad splits."""

    def test_lopsided_split(self):
        """Test C_4 with every edge on side 1."""
        g = generate_cycle(4)
        bipartition = EdgeBipartition.build(dict.fromkeys(range(4), 1), {})
        ok, diagnostics = verify_split(g, bipartition, frozenset())

        self.assertFalse(ok)
        self.assertEqual(len(diagnostics), 4)

    def test_partial_split(self):
        """Test that an edge missing from the split is reported."""
        g = generate_cycle(4)
        bipartition = EdgeBipartition.build({0: 1, 1: 2, 2: 1}, {})

        self.assertFalse(verify_split(g, bipartition, frozenset())[0])

    def test_two_exceptions_in_one_component(self):
        """Test that a component has at most one exceptional vertex."""
        g = generate_path(3)
        bipartition = EdgeBipartition.build({0: 1, 1: 1}, {})
        ok, diagnostics = verify_split(g, bipartition, frozenset({0, 2}))

        self.assertFalse(ok)
        self.assertTrue(any("component" in line for line in diagnostics))


class ConnectedGraphsTest(OracleTestSetup):
    """Test the enumeration of connected graphs up to isomorphism."""

    def test_counts_up_to_five(self):
        """Test 2, 6 and 21 classes on 3, 4 and 5 vertices."""
        counts = self.cases["connected_graph_counts"]
        for n in (3, 4, 5):
            self.assertEqual(len(connected_graphs(n, min_n=n)), counts[str(n)])

    @tag("slow")
    def test_count_six(self):
        """Test 112 classes on 6 vertices."""
        self.assertEqual(
            len(connected_graphs(6, min_n=6)),
            self.cases["connected_graph_counts"]["6"],
        )
