"""
Random pair assignments and the bad events that must be avoided.

    A_v: v has at least 2t - 1 H-neighbours with the same y and the same pair.
    B_v: d_H(v) > (1 - 2q) d(v) - 2 and some H''_i has fewer than
         q d_H(v) + 1 edges at v.

resample_until_good removes them with Moser-Tardos resampling: while an
event holds, redraw the pairs of its scope (v and its H-neighbours).
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from .decomposer import PairAssignment, classify_pair
from .exceptions import ParameterError
from .utils import check_positive, make_rng, parse_rational, spawn_seeds

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EventReport:
    violated_A: frozenset
    violated_B: frozenset
    iterations: int
    resample_log: tuple = field(default=(), repr=False)

    @property
    def success(self):
        return not self.violated_A and not self.violated_B


def sample_uniform(g, y, seed):
    """Independent uniform pairs on [0, y_v - 1]^2, reproducible per seed."""
    if len(y) != g.n:
        raise ParameterError(f"y has {len(y)} entries, graph has {g.n} vertices")
    rng = make_rng(seed)
    high = np.asarray(y, dtype=np.int64)
    c1 = rng.integers(0, high) if g.n else high
    c2 = rng.integers(0, high) if g.n else high
    return PairAssignment(
        c1=tuple(int(x) for x in c1),
        c2=tuple(int(x) for x in c2),
        y=tuple(int(x) for x in y),
    )


def _h_adjacency(g, h):
    return [[u for u, eid in g.incident(v) if eid in h] for v in range(g.n)]


def _a_count(v, h_adj, c1, c2, y):
    return sum(
        1
        for u in h_adj[v]
        if y[u] == y[v] and c1[u] == c1[v] and c2[u] == c2[v]
    )


def _b_witness(v, h_adj, c1, c2):
    hpp = {1: 0, 2: 0}
    for u in h_adj[v]:
        routed = classify_pair((c1[v], c2[v]), (c1[u], c2[u]))
        if routed is not None:
            hpp[routed[0]] += 1
    return len(h_adj[v]), hpp[1], hpp[2]


def _b_violated(d, witness, q):
    d_h, d1, d2 = witness
    if d_h <= (1 - 2 * q) * d - 2:
        return False
    return min(d1, d2) < q * d_h + 1


def check_A(g, h, pa, v, t):
    """(violated, |A(v)|); violated iff |A(v)| >= 2t - 1."""
    h_adj = {v: [u for u, eid in g.incident(v) if eid in h]}
    count = _a_count(v, h_adj, pa.c1, pa.c2, pa.y)
    return count >= 2 * t - 1, count


def check_B(g, h, pa, v, q):
    """(violated, (d_H(v), d_H''1(v), d_H''2(v)))."""
    q = parse_rational(q)
    h_adj = {v: [u for u, eid in g.incident(v) if eid in h]}
    witness = _b_witness(v, h_adj, pa.c1, pa.c2)
    return _b_violated(g.degree(v), witness, q), witness


def scan_events(g, h, pa, q, t):
    """Fresh full scan: (violated A vertices, violated B vertices)."""
    q = parse_rational(q)
    h_adj = _h_adjacency(g, h)
    degrees = g.degrees
    bad_a = {
        v for v in range(g.n) if _a_count(v, h_adj, pa.c1, pa.c2, pa.y) >= 2 * t - 1
    }
    bad_b = {
        v
        for v in range(g.n)
        if _b_violated(degrees[v], _b_witness(v, h_adj, pa.c1, pa.c2), q)
    }
    return frozenset(bad_a), frozenset(bad_b)


def resample_until_good(g, h, y, q, t, seed, max_rounds=None, record_log=True):
    """
    Moser-Tardos loop. Each round picks the violated event of the smallest
    vertex (A before B) and redraws the pairs of v and its H-neighbours.
    Returns (assignment, EventReport); on hitting max_rounds the assignment
    with the fewest violated events seen is returned with a failure report.
    """
    q = parse_rational(q)
    t = check_positive("t", t)
    if max_rounds is None:
        max_rounds = 100 * max(g.n, 1)
    max_rounds = check_positive("max_rounds", max_rounds)

    initial_seed, stream_seed = spawn_seeds(seed, 2)
    start = sample_uniform(g, y, initial_seed)
    rng = make_rng(stream_seed)
    c1, c2 = list(start.c1), list(start.c2)
    y = list(start.y)
    h_adj = _h_adjacency(g, h)
    degrees = g.degrees

    def a_bad(v):
        return _a_count(v, h_adj, c1, c2, y) >= 2 * t - 1

    def b_bad(v):
        return _b_violated(degrees[v], _b_witness(v, h_adj, c1, c2), q)

    bad_a = {v for v in range(g.n) if a_bad(v)}
    bad_b = {v for v in range(g.n) if b_bad(v)}
    best = (len(bad_a) + len(bad_b), tuple(c1), tuple(c2))
    log = []
    rounds = 0
    while (bad_a or bad_b) and rounds < max_rounds:
        rounds += 1
        v_a = min(bad_a, default=None)
        v_b = min(bad_b, default=None)
        if v_b is None or (v_a is not None and v_a <= v_b):
            kind, v = "A", v_a
        else:
            kind, v = "B", v_b
        if record_log:
            log.append((rounds, kind, v))

        scope = sorted({v, *h_adj[v]})
        high = np.asarray([y[u] for u in scope], dtype=np.int64)
        for u, a, b in zip(scope, rng.integers(0, high), rng.integers(0, high)):
            c1[u], c2[u] = int(a), int(b)

        affected = set(scope)
        for u in scope:
            affected.update(h_adj[u])
        for u in affected:
            if a_bad(u):
                bad_a.add(u)
            else:
                bad_a.discard(u)
            if b_bad(u):
                bad_b.add(u)
            else:
                bad_b.discard(u)

        violated = len(bad_a) + len(bad_b)
        if violated < best[0]:
            best = (violated, tuple(c1), tuple(c2))
        logger.debug(f"round {rounds}: resampled {kind}_{v}, {violated} violated")

    if bad_a or bad_b:
        assignment = PairAssignment(c1=best[1], c2=best[2], y=tuple(y))
        logger.warning(
            f"resampling stopped after {rounds} rounds with {best[0]} "
            f"violated events in the best assignment"
        )
    else:
        assignment = PairAssignment(c1=tuple(c1), c2=tuple(c2), y=tuple(y))
        logger.info(f"resampling succeeded after {rounds} rounds")

    final_a, final_b = scan_events(g, h, assignment, q, t)
    report = EventReport(
        violated_A=final_a,
        violated_B=final_b,
        iterations=rounds,
        resample_log=tuple(log),
    )
    return assignment, report
