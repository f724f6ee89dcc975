"""
Structural half of the two-subgraph decomposition.

The edges of G are split into H' (endpoint degrees more than a factor 2
apart) and H. Every vertex gets a pair (c1, c2) in [0, y_v - 1]^2 and the
edges of H are routed to H_1 or H_2 by the partition rules:

    1°  c1 equal, c2 different                          -> H_2
    2°  c2 equal, c1 different                          -> H_1
    3°  both different, c1_u + c2_u + c1_v + c2_v odd   -> H_1
    4°  both different, that sum even                   -> H_2
    5°  identical pairs and equal y: the same-class subgraph, split
        component by component with the balanced Euler split
    6°  identical pairs, different y                    -> H_2
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .euler import balanced_split
from .exceptions import AssignmentError, DegreeTooSmallError, ParameterError
from .graphs import HPRIME_TAG, EdgeBipartition, generate_complete
from .utils import check_positive, parse_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PairAssignment:
    """Per-vertex colour pair (c1[v], c2[v]) and its range y[v]."""

    c1: tuple
    c2: tuple
    y: tuple

    def __post_init__(self):
        if not len(self.c1) == len(self.c2) == len(self.y):
            raise AssignmentError("c1, c2 and y must have one entry per vertex")
        for v, (a, b, y) in enumerate(zip(self.c1, self.c2, self.y)):
            if y < 1:
                raise AssignmentError(f"vertex {v}: y must be positive, got {y}")
            if not (0 <= a < y and 0 <= b < y):
                raise AssignmentError(
                    f"vertex {v}: pair ({a}, {b}) outside [0, {y - 1}]^2"
                )

    @property
    def n(self):
        return len(self.y)

    def pair(self, v):
        return self.c1[v], self.c2[v]

    def same_class(self, u, v):
        """Identical pairs and equal y: u and v lie in one H_{c1,c2,y}."""
        return self.pair(u) == self.pair(v) and self.y[u] == self.y[v]


@dataclass(frozen=True)
class PartitionOutcome:
    h1: frozenset
    h2: frozenset
    e0: frozenset
    vstar: frozenset
    T: int
    same_class_components: tuple
    bipartition: EdgeBipartition

    def without_e0(self, side):
        """H''_i = H_i - E_0."""
        return (self.h1 if side == 1 else self.h2) - self.e0

    def same_class_neighbours(self, g, side):
        """Neighbours of each vertex inside the side-`side` same-class parts."""
        neighbours = defaultdict(list)
        for eid, tag in self.bipartition.provenance.items():
            if tag == "5°" and self.bipartition.side[eid] == side:
                u, v = g.edges[eid]
                neighbours[u].append(v)
                neighbours[v].append(u)
        return neighbours


def classify_pair(pair_u, pair_v):
    """
    Side and rule for an edge whose endpoints carry different pairs, from
    rules 1°-4°. Returns None for identical pairs (the edge is in E_0).
    """
    if pair_u == pair_v:
        return None
    (a1, a2), (b1, b2) = pair_u, pair_v
    if a1 == b1:
        return 2, "1°"
    if a2 == b2:
        return 1, "2°"
    if (a1 + a2 + b1 + b2) % 2 == 1:
        return 1, "3°"
    return 2, "4°"


def count_routes(y_u, pair_v):
    """How many of the y_u^2 pairs at u send uv to H''_1 and to H''_2."""
    routes = {1: 0, 2: 0}
    for c1 in range(y_u):
        for c2 in range(y_u):
            outcome = classify_pair((c1, c2), pair_v)
            if outcome is not None:
                routes[outcome[0]] += 1
    return routes[1], routes[2]


def split_far_edges(g):
    """(H', H): H' holds the edges uv with d(u) outside [d(v)/2, 2d(v)]."""
    degrees = g.degrees
    hprime = set()
    for eid, (u, v) in enumerate(g.edges):
        low, high = sorted((degrees[u], degrees[v]))
        if high > 2 * low:
            hprime.add(eid)
    h = frozenset(range(g.m)) - hprime
    return frozenset(hprime), h


def hprime_split(g, hprime):
    """Balanced split of H' into H'_1 / H'_2, edges tagged "H-prime"."""
    if not hprime:
        return EdgeBipartition.build({}, {}), frozenset()
    sub, vertices, edge_ids = g.edge_subgraph(hprime)
    local, exceptional = balanced_split(sub, tag=HPRIME_TAG)
    side = {edge_ids[e]: s for e, s in local.side.items()}
    provenance = dict.fromkeys(side, HPRIME_TAG)
    return (
        EdgeBipartition.build(side, provenance),
        frozenset(vertices[v] for v in exceptional),
    )


def compute_y(g, q, t):
    """
    y_v: the largest power of two not above q*d(v)/(24t). Exact rational
    arithmetic; raises DegreeTooSmallError when that quantity is below 1.
    """
    q = parse_rational(q)
    t = check_positive("t", t)
    y = []
    for v, d in enumerate(g.degrees):
        bound = q * d / (24 * t)
        if bound < 1:
            raise DegreeTooSmallError(v, bound)
        power = 1
        while 2 * power <= bound:
            power *= 2
        y.append(power)
    return tuple(y)


def apply_rules(g, h, pa):
    """Route every edge of H to H_1 or H_2 by rules 1°-6°."""
    if pa.n != g.n:
        raise AssignmentError(f"assignment covers {pa.n} vertices, graph has {g.n}")
    side, provenance = {}, {}
    e0 = set()
    classes = defaultdict(list)
    for eid in sorted(h):
        u, v = g.edges[eid]
        routed = classify_pair(pa.pair(u), pa.pair(v))
        if routed is not None:
            side[eid], provenance[eid] = routed
            continue
        e0.add(eid)
        if pa.y[u] == pa.y[v]:
            classes[(*pa.pair(u), pa.y[u])].append(eid)
        else:
            side[eid], provenance[eid] = 2, "6°"

    vstar = set()
    components = []
    same_class_degree = [0] * g.n
    # The Euler split is deterministic, so class order only fixes output order.
    for key in sorted(classes):
        sub, vertices, edge_ids = g.edge_subgraph(classes[key])
        split, exceptional = balanced_split(sub, tag="5°")
        for local_eid, s in split.side.items():
            side[edge_ids[local_eid]] = s
            provenance[edge_ids[local_eid]] = "5°"
        vstar.update(vertices[v] for v in exceptional)
        for part in sub.components():
            components.append((*key, frozenset(vertices[v] for v in part)))
        for local_v, d in enumerate(sub.degrees):
            same_class_degree[vertices[local_v]] = d

    largest = max(same_class_degree, default=0)
    bipartition = EdgeBipartition.build(side, provenance)
    outcome = PartitionOutcome(
        h1=bipartition.edges_on(1),
        h2=bipartition.edges_on(2),
        e0=frozenset(e0),
        vstar=frozenset(vstar),
        T=(largest + 3) // 2,
        same_class_components=tuple(components),
        bipartition=bipartition,
    )
    logger.debug(
        f"rules applied: |H1|={len(outcome.h1)} |H2|={len(outcome.h2)} "
        f"|E0|={len(e0)} |V*|={len(vstar)} T={outcome.T}"
    )
    return outcome


def knsq_assignment(n):
    """
    K_{n^2} with vertex (i, j) stored as i*n + j, labelled by the pair
    (i, j) with y = n everywhere.
    """
    if n < 2 or n % 2:
        raise ParameterError(f"n must be an even integer >= 2, got {n}")
    g = generate_complete(n * n)
    pa = PairAssignment(
        c1=tuple(v // n for v in range(n * n)),
        c2=tuple(v % n for v in range(n * n)),
        y=(n,) * (n * n),
    )
    return g, pa


def far_edge_guarantee(q):
    """The far-degree separation argument needs (8/3)q > (5/3)(1 - q)."""
    return parse_rational(q) > Fraction(5, 13)
