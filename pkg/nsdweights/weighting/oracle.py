"""
Ground truth for weightings and decompositions: NSD and certificate
verifiers plus exhaustive searches for small graphs.
"""

import itertools
import logging
from collections import defaultdict

import networkx as nx

from .certificates import Verdict, build_certificate
from .exceptions import (
    CertificateStructureError,
    InstanceTooLargeError,
    MissingWeightError,
    ParameterError,
)
from .graphs import WHOLE_TAG, EdgeBipartition, Graph

logger = logging.getLogger(__name__)


def weighted_degrees(g, w):
    """d_c(v) = sum of the weights on the edges at v."""
    sums = []
    for v in range(g.n):
        total = 0
        for _, eid in g.incident(v):
            if eid not in w:
                raise MissingWeightError(eid)
            total += w[eid]
        sums.append(total)
    return tuple(sums)


def verify_nsd(g, w):
    """(ok, conflicting edge ids): ok iff adjacent vertices get distinct sums."""
    for eid in range(g.m):
        if eid not in w:
            raise MissingWeightError(eid)
    sums = weighted_degrees(g, w)
    conflicts = tuple(eid for eid, (u, v) in enumerate(g.edges) if sums[u] == sums[v])
    return not conflicts, conflicts


def verify_certificate(g, cert):
    """
    (ok, diagnostics). Checks, in order:
    (a) the bipartition partitions E, (b) every side edge has weight 1 or 2
    and no other edge is weighted, (c) the recorded sums match the weights,
    (d) each side is neighbour sum distinguishing.
    """
    if len(cert.weights) != 2 or len(cert.sums) != 2:
        raise CertificateStructureError("a certificate has exactly two sides")
    for i, sums in enumerate(cert.sums, start=1):
        if len(sums) != g.n:
            raise CertificateStructureError(
                f"SUMS-{i} has {len(sums)} entries, graph has {g.n} vertices"
            )
    diagnostics = []
    side = cert.bipartition.side

    missing = sorted(set(range(g.m)) - set(side))
    extra = sorted(set(side) - set(range(g.m)))
    for eid in missing:
        diagnostics.append(f"(a) edge {eid} is on neither side")
    for eid in extra:
        diagnostics.append(f"(a) edge {eid} does not exist")

    for i in (1, 2):
        weights = cert.weights[i - 1]
        on_side = {e for e, s in side.items() if s == i and e < g.m}
        for eid in sorted(on_side - set(weights)):
            diagnostics.append(f"(b) side {i}: edge {eid} has no weight")
        for eid in sorted(set(weights) - on_side):
            diagnostics.append(f"(b) side {i}: edge {eid} is weighted but not on side {i}")
        for eid, w in sorted(weights.items()):
            if w not in (1, 2):
                diagnostics.append(f"(b) side {i}: edge {eid} has weight {w}")

    if diagnostics:
        return False, tuple(diagnostics)

    for i in (1, 2):
        sub, edge_ids = g.spanning_subgraph(cert.bipartition.edges_on(i))
        local = {j: cert.weights[i - 1][eid] for j, eid in enumerate(edge_ids)}
        sums = weighted_degrees(sub, local)
        for v, (recorded, actual) in enumerate(zip(cert.sums[i - 1], sums)):
            if recorded != actual:
                diagnostics.append(
                    f"(c) side {i}: vertex {v} records s={recorded}, "
                    f"weights give {actual}"
                )
        _, conflicts = verify_nsd(sub, local)
        for j in conflicts:
            u, v = sub.edges[j]
            diagnostics.append(
                f"(d) side {i}: edge {edge_ids[j]} ({u}, {v}) joins equal sums "
                f"{sums[u]}"
            )
    return not diagnostics, tuple(diagnostics)


def verify_split(g, bipartition, exceptional):
    """
    (ok, diagnostics) for a balanced split: every vertex keeps floor(d/2)
    edges on both sides, except the reported exceptional vertices (at most
    one per component) which have exactly ceil((d+1)/2) / floor((d-1)/2).
    """
    diagnostics = []
    if not bipartition.is_total(g):
        diagnostics.append("split does not cover every edge exactly once")
        return False, tuple(diagnostics)
    d1, d2 = bipartition.side_degrees(g)
    for v, d in enumerate(g.degrees):
        if v in exceptional:
            if (d1[v], d2[v]) != ((d + 2) // 2, (d - 1) // 2):
                diagnostics.append(
                    f"exceptional vertex {v}: degrees ({d1[v]}, {d2[v]}) "
                    f"from d={d}"
                )
        elif min(d1[v], d2[v]) < d // 2:
            diagnostics.append(
                f"vertex {v}: degrees ({d1[v]}, {d2[v]}) below floor({d}/2)"
            )
    for component in g.components():
        marked = [v for v in component if v in exceptional]
        if len(marked) > 1:
            diagnostics.append(f"component of {component[0]}: exceptional {marked}")
    return not diagnostics, tuple(diagnostics)


def brute_force_nsd(g, k, threshold=10**8):
    """
    First NSD weighting in lexicographic order over {1..k}^E (as a tuple
    indexed by edge id), or None when there is none.
    """
    if k < 1:
        raise ParameterError(f"k must be positive, got {k}")
    if k**g.m > threshold:
        raise InstanceTooLargeError(
            f"{k}^{g.m} weightings exceed the brute-force threshold {threshold}"
        )
    last_edge = [max((eid for _, eid in g.incident(v)), default=-1) for v in range(g.n)]
    closing = defaultdict(list)
    for v, eid in enumerate(last_edge):
        if eid >= 0:
            closing[eid].append(v)
    weights = [0] * g.m
    sums = [0] * g.n

    def closed_ok(i):
        for x in closing[i]:
            for y, _ in g.incident(x):
                if last_edge[y] <= i and sums[x] == sums[y]:
                    return False
        return True

    def descend(i):
        if i == g.m:
            return True
        u, v = g.edges[i]
        for w in range(1, k + 1):
            weights[i] = w
            sums[u] += w
            sums[v] += w
            if closed_ok(i) and descend(i + 1):
                return True
            sums[u] -= w
            sums[v] -= w
        return False

    return tuple(weights) if descend(0) else None


def brute_force_22(g, max_edges=20):
    """
    First bipartition (lexicographic over {1,2}^E) whose two sides are both
    {1,2}-weight colourable, as a certificate; None when there is none.
    """
    if g.m > max_edges:
        raise InstanceTooLargeError(f"{g.m} edges exceed the limit {max_edges}")
    cache = {}

    def side_weights(edge_ids):
        if edge_ids not in cache:
            sub, kept = g.spanning_subgraph(edge_ids)
            found = brute_force_nsd(sub, 2, threshold=2**max_edges)
            cache[edge_ids] = (
                None if found is None else dict(zip(kept, found))
            )
        return cache[edge_ids]

    for sides in itertools.product((1, 2), repeat=g.m):
        parts = tuple(
            frozenset(e for e, s in enumerate(sides) if s == i) for i in (1, 2)
        )
        first = side_weights(parts[0])
        if first is None:
            continue
        second = side_weights(parts[1])
        if second is None:
            continue
        bipartition = EdgeBipartition.build(
            dict(enumerate(sides)), dict.fromkeys(range(g.m), WHOLE_TAG)
        )
        return build_certificate(g, bipartition, (first, second), Verdict.ok())
    return None


def connected_graphs(max_n, min_n=3):
    """
    One representative per isomorphism class of connected graphs on
    min_n..max_n vertices, found by enumerating edge subsets of K_n.
    """
    representatives = []
    for n in range(min_n, max_n + 1):
        pairs = list(itertools.combinations(range(n), 2))
        full = (1 << n) - 1
        buckets = defaultdict(list)
        for mask in range(1 << len(pairs)):
            chosen = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            if len(chosen) < n - 1:
                continue
            covered = 0
            for u, v in chosen:
                covered |= 1 << u | 1 << v
            if covered != full:
                continue
            candidate = nx.Graph(chosen)
            if not nx.is_connected(candidate):
                continue
            key = (len(chosen), nx.weisfeiler_lehman_graph_hash(candidate))
            if any(nx.is_isomorphic(candidate, seen) for seen in buckets[key]):
                continue
            buckets[key].append(candidate)
            representatives.append(Graph.from_edges(n, chosen))
        logger.debug(f"connected graphs on {n} vertices: {sum(map(len, buckets.values()))}")
    return representatives
