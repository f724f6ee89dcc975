"""
Balanced edge split along Eulerian tours.

Every component is made Eulerian (an auxiliary vertex joined to its odd
vertices, if any), toured with Hierholzer's method and its edges are
alternately given to side 1 and side 2. Each vertex then keeps at least
floor(d/2) edges on each side, except possibly the start vertex of a
component whose degrees are all even and whose edge count is odd.
"""

import logging

from .graphs import EULER_TAG, EdgeBipartition

logger = logging.getLogger(__name__)

AUX = -1


def balanced_split(g, tag=EULER_TAG):
    """
    Split g into two sides. Returns (EdgeBipartition, exceptional vertices).
    Exceptional vertices (at most one per component) have
    d_1 = d/2 + 1 and d_2 = d/2 - 1.
    """
    side = {}
    exceptional = set()
    degrees = g.degrees
    for component in g.components():
        if degrees[component[0]] == 0:
            continue
        tour, start = _component_tour(g, component, degrees)
        for position, eid in enumerate(tour):
            if eid is not None:
                side[eid] = 1 if position % 2 == 0 else 2
        if start != AUX and len(tour) % 2 == 1:
            exceptional.add(start)
    provenance = {eid: tag for eid in side}
    bipartition = EdgeBipartition.build(side, provenance)
    if exceptional:
        logger.debug(f"balanced split: exceptional vertices {sorted(exceptional)}")
    return bipartition, frozenset(exceptional)


def _component_tour(g, component, degrees):
    """
    Eulerian circuit of one component as a list of edge ids; auxiliary
    edges appear as None. Neighbour order (adjacency order, auxiliary edge
    last) breaks ties, so the tour is deterministic.
    """
    odd = [v for v in component if degrees[v] % 2]
    adjacency = {v: list(g.incident(v)) for v in component}
    if odd:
        start = AUX
        adjacency[AUX] = []
        for v in odd:
            key = ("aux", v)
            adjacency[v].append((AUX, key))
            adjacency[AUX].append((v, key))
    else:
        start = min(component, key=lambda v: (degrees[v], v))

    circuit = _hierholzer(adjacency, start)
    return [eid if not isinstance(eid, tuple) else None for eid in circuit], start


def _hierholzer(adjacency, start):
    used = set()
    pointer = dict.fromkeys(adjacency, 0)
    stack = [(start, None)]
    circuit = []
    while stack:
        v, via = stack[-1]
        row = adjacency[v]
        i = pointer[v]
        while i < len(row) and row[i][1] in used:
            i += 1
        pointer[v] = i
        if i == len(row):
            stack.pop()
            if via is not None:
                circuit.append(via)
        else:
            u, eid = row[i]
            used.add(eid)
            stack.append((u, eid))
    circuit.reverse()
    return circuit
