"""
Graph substrate: an immutable simple undirected graph with stable edge ids,
edge bipartitions, the edge-list text format and the random generators.
"""

import logging
from dataclasses import dataclass, field
from collections import defaultdict
from types import MappingProxyType

import networkx as nx
import numpy as np

from .exceptions import (
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
from .utils import make_rng

logger = logging.getLogger(__name__)

# Provenance tags of an EdgeBipartition
RULE_TAGS = ("1°", "2°", "3°", "4°", "5°", "6°")
HPRIME_TAG = "H-prime"
EULER_TAG = "euler"
WHOLE_TAG = "whole"
PROVENANCE_TAGS = RULE_TAGS + (HPRIME_TAG, EULER_TAG, WHOLE_TAG)


@dataclass(frozen=True)
class Graph:
    """
    Simple undirected graph on vertices 0..n-1.
    - edges[i] is the pair (u, v), u < v, of edge id i.
    - adjacency[v] lists (neighbour, edge id) in increasing edge id order.
    Build it with Graph.from_edges, which enforces simplicity.
    """

    n: int
    edges: tuple
    adjacency: tuple = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n, edges):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        normalized = []
        seen = set()
        adjacency = [[] for _ in range(n)]
        for eid, (u, v) in enumerate(edges):
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"edge {eid}: self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {eid}: vertex out of range 0..{n - 1}")
            pair = (u, v) if u < v else (v, u)
            if pair in seen:
                raise GraphError(f"edge {eid}: duplicate edge {pair}")
            seen.add(pair)
            normalized.append(pair)
            adjacency[u].append((v, eid))
            adjacency[v].append((u, eid))
        return cls(
            n=n,
            edges=tuple(normalized),
            adjacency=tuple(tuple(row) for row in adjacency),
        )

    @property
    def m(self):
        return len(self.edges)

    def degree(self, v):
        return len(self.adjacency[v])

    @property
    def degrees(self):
        return tuple(len(row) for row in self.adjacency)

    def min_degree(self):
        return min(self.degrees, default=0)

    def neighbours(self, v):
        return [u for u, _ in self.adjacency[v]]

    def incident(self, v):
        return self.adjacency[v]

    def endpoints(self, edge_id):
        if not 0 <= edge_id < self.m:
            raise UnknownEdgeError(edge_id, self.m)
        return self.edges[edge_id]

    def to_networkx(self):
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.n))
        nx_graph.add_edges_from(
            (u, v, {"eid": eid}) for eid, (u, v) in enumerate(self.edges)
        )
        return nx_graph

    def components(self):
        """Connected components as sorted vertex lists, by smallest vertex."""
        parts = nx.connected_components(self.to_networkx())
        return sorted((sorted(part) for part in parts), key=lambda c: c[0])

    def spanning_subgraph(self, edge_ids):
        """
        Subgraph on all n vertices keeping edge_ids (in increasing order).
        Returns (subgraph, global edge ids indexed by local edge id).
        """
        kept = tuple(sorted(edge_ids))
        return Graph.from_edges(self.n, [self.edges[e] for e in kept]), kept

    def edge_subgraph(self, edge_ids):
        """
        Compact subgraph spanned by edge_ids, vertices relabelled 0..k-1 in
        increasing original order. Returns (subgraph, vertex ids, edge ids).
        """
        kept = tuple(sorted(edge_ids))
        vertices = tuple(sorted({x for e in kept for x in self.edges[e]}))
        local = {v: i for i, v in enumerate(vertices)}
        sub = Graph.from_edges(
            len(vertices),
            [(local[self.edges[e][0]], local[self.edges[e][1]]) for e in kept],
        )
        return sub, vertices, kept


@dataclass(frozen=True)
class EdgeBipartition:
    """
    Map edge id -> side (1 or 2), with the rule that placed each edge.
    Total over the source graph's edges when it describes a decomposition;
    partial maps (over H only) are used inside the decomposer.
    """

    side: MappingProxyType
    provenance: MappingProxyType

    @classmethod
    def build(cls, side, provenance):
        for eid, s in side.items():
            if s not in (1, 2):
                raise GraphError(f"edge {eid}: side must be 1 or 2, got {s}")
        for eid, tag in provenance.items():
            if tag not in PROVENANCE_TAGS:
                raise GraphError(f"edge {eid}: unknown provenance {tag!r}")
        return cls(
            side=MappingProxyType(dict(sorted(side.items()))),
            provenance=MappingProxyType(dict(sorted(provenance.items()))),
        )

    @classmethod
    def merge(cls, *parts):
        side, provenance = {}, {}
        for part in parts:
            side.update(part.side)
            provenance.update(part.provenance)
        return cls.build(side, provenance)

    def edges_on(self, side):
        return frozenset(e for e, s in self.side.items() if s == side)

    def is_total(self, g):
        return set(self.side) == set(range(g.m))

    def side_degrees(self, g):
        """(d_1, d_2): per-vertex degree vectors of the two sides."""
        d = {1: [0] * g.n, 2: [0] * g.n}
        for eid, s in self.side.items():
            u, v = g.endpoints(eid)
            d[s][u] += 1
            d[s][v] += 1
        return tuple(d[1]), tuple(d[2])


# Edge-list text format


def load_edge_list(text):
    """
    Parse the edge-list format: a header "n m" then m lines "u v".
    Edge ids follow file order. Blank lines are ignored.
    """
    rows = [
        (number, line.split())
        for number, line in enumerate(text.splitlines(), start=1)
        if line.strip()
    ]
    if not rows:
        raise MalformedLineError(1, "missing header 'n m'")

    header_line, header = rows[0]
    n, m = _read_ints(header_line, header, "header 'n m'")
    if n < 0 or m < 0:
        raise MalformedLineError(header_line, "n and m must be non-negative")
    if len(rows) - 1 != m:
        raise EdgeCountError(
            rows[-1][0] if len(rows) > 1 else header_line,
            f"header announces {m} edges, found {len(rows) - 1}",
        )

    edges = []
    seen = {}
    for number, tokens in rows[1:]:
        u, v = _read_ints(number, tokens, "edge 'u v'")
        for x in (u, v):
            if not 0 <= x < n:
                raise VertexRangeError(number, f"vertex {x} not in 0..{n - 1}")
        if u == v:
            raise SelfLoopError(number, f"self-loop at vertex {u}")
        pair = (min(u, v), max(u, v))
        if pair in seen:
            raise DuplicateEdgeError(
                number, f"edge {pair} already given on line {seen[pair]}"
            )
        seen[pair] = number
        edges.append(pair)
    return Graph.from_edges(n, edges)


def _read_ints(number, tokens, what):
    if len(tokens) != 2:
        raise MalformedLineError(number, f"expected {what}")
    try:
        return int(tokens[0]), int(tokens[1])
    except ValueError:
        raise MalformedLineError(number, f"expected {what}") from None


def serialize_edge_list(g):
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


# Generators


def generate_complete(k):
    if k < 1:
        raise ParameterError(f"k must be positive, got {k}")
    return Graph.from_edges(
        k, [(u, v) for u in range(k) for v in range(u + 1, k)]
    )


def generate_cycle(n):
    if n < 3:
        raise ParameterError(f"a cycle needs at least 3 vertices, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def generate_path(n):
    if n < 1:
        raise ParameterError(f"n must be positive, got {n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def generate_star(k):
    """K_{1,k}: centre 0, leaves 1..k."""
    return Graph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)])


def generate_complete_bipartite(a, b):
    """K_{a,b}: vertices 0..a-1 on one side, a..a+b-1 on the other."""
    return Graph.from_edges(
        a + b, [(u, a + v) for u in range(a) for v in range(b)]
    )


def generate_gnp(n, p, seed):
    """
    G(n, p): each pair u < v, in lexicographic order, is kept when a PCG64
    uniform draw falls below p.
    """
    if not 0 <= p <= 1:
        raise ParameterError(f"p must lie in [0, 1], got {p}")
    if n < 1:
        raise ParameterError(f"n must be positive, got {n}")
    rows, cols = np.triu_indices(n, k=1)
    keep = make_rng(seed).random(rows.size) < p
    return Graph.from_edges(n, list(zip(rows[keep].tolist(), cols[keep].tolist())))


def generate_bipartite_gnp(a, b, p, seed):
    """Random subgraph of K_{a,b}, each cross pair kept with probability p."""
    if not 0 <= p <= 1:
        raise ParameterError(f"p must lie in [0, 1], got {p}")
    keep = make_rng(seed).random(a * b) < p
    edges = [
        (u, a + v)
        for idx, (u, v) in enumerate((u, v) for u in range(a) for v in range(b))
        if keep[idx]
    ]
    return Graph.from_edges(a + b, edges)


def generate_regular(n, d, seed, max_attempts=1000, strict=False):
    """
    Random simple d-regular graph from the pairing model.

    strict=True is the plain model: every round pairs all n*d stubs at once
    and is thrown away whole if any pair is a loop or repeats an edge, which
    makes the result uniform over simple d-regular graphs. Its acceptance
    rate falls like exp(-(d^2 - 1)/4), so it only suits small d.

    The default keeps the good pairs of a round and re-pairs just the stubs
    of rejected ones, abandoning the round when the open stubs can no longer
    be joined. This runs at any density but is not exactly uniform.
    """
    if n < 1 or d < 0:
        raise ParameterError(f"need n >= 1 and d >= 0, got n={n}, d={d}")
    if (n * d) % 2:
        raise GenerationError(f"n*d must be even, got n={n}, d={d}")
    if d >= n:
        raise GenerationError(f"need d < n, got n={n}, d={d}")
    if d == 0:
        return Graph.from_edges(n, [])

    rng = make_rng(seed)
    pairing = _strict_round if strict else _pairing_round
    for attempt in range(1, max_attempts + 1):
        edges = pairing(n, d, rng)
        if edges is not None:
            if attempt > 1:
                logger.info(f"regular graph n={n} d={d}: {attempt} rounds")
            return Graph.from_edges(n, sorted(edges))
    raise GenerationError(
        f"no simple {d}-regular graph on {n} vertices after "
        f"{max_attempts} pairing rounds"
    )


def _strict_round(n, d, rng):
    stubs = np.repeat(np.arange(n), d)
    rng.shuffle(stubs)
    edges = set()
    for s1, s2 in zip(stubs[0::2].tolist(), stubs[1::2].tolist()):
        pair = (s1, s2) if s1 < s2 else (s2, s1)
        if s1 == s2 or pair in edges:
            return None
        edges.add(pair)
    return edges


def _pairing_round(n, d, rng):
    edges = set()
    stubs = np.repeat(np.arange(n), d)
    while stubs.size:
        rng.shuffle(stubs)
        leftover = defaultdict(int)
        for s1, s2 in zip(stubs[0::2].tolist(), stubs[1::2].tolist()):
            pair = (s1, s2) if s1 < s2 else (s2, s1)
            if s1 != s2 and pair not in edges:
                edges.add(pair)
            else:
                leftover[s1] += 1
                leftover[s2] += 1
        if not _can_extend(edges, leftover):
            return None
        stubs = np.array(
            [v for v, count in sorted(leftover.items()) for _ in range(count)],
            dtype=np.int64,
        )
    return edges


def _can_extend(edges, leftover):
    if not leftover:
        return True
    open_vertices = sorted(leftover)
    for i, u in enumerate(open_vertices):
        for v in open_vertices[i + 1:]:
            if (u, v) not in edges:
                return True
    return False
