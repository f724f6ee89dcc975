"""
Degree-constrained subgraphs with modular targets.

Given a(v) and lambda_v >= 2, find S subset of E with, at every vertex,
    d(v)/3 <= d_S(v) <= 2d(v)/3   and   d_S(v) = a(v) or a(v)+1 (mod lambda_v).

Small instances are settled by depth-first search, which either finds a
witness or proves that none exists. Larger ones (or exact searches that run
out of nodes) go to a seeded local search that applies improving
alternating paths (single edge flips and two-edge swaps are the shortest
ones) and shakes the edges at a stuck vertex when none is left. Every
witness is checked by verify_dcs before it is returned.
"""

import bisect
import logging
from collections import deque
from dataclasses import dataclass

from .exceptions import ParameterError, UnknownEdgeError
from .utils import make_rng, spawn_seeds

logger = logging.getLogger(__name__)

FOUND = "found"
PROVEN_INFEASIBLE = "proven-infeasible"
BUDGET_EXHAUSTED = "budget-exhausted"

# Probability of flipping each edge at a stuck vertex when no path improves
NOISE = 0.2


@dataclass(frozen=True)
class ModTarget:
    """Residue target a[v] (any integer) and modulus lam[v] >= 2."""

    a: tuple
    lam: tuple

    def __post_init__(self):
        if len(self.a) != len(self.lam):
            raise ParameterError("a and lambda must have one entry per vertex")
        for v, lam in enumerate(self.lam):
            if lam < 2:
                raise ParameterError(f"vertex {v}: lambda must be >= 2, got {lam}")

    def residues(self, v):
        lam = self.lam[v]
        return self.a[v] % lam, (self.a[v] + 1) % lam


@dataclass(frozen=True)
class VertexDiagnostic:
    vertex: int
    degree: int
    low: int
    high: int
    residue: int
    targets: tuple
    modulus: int

    def __str__(self):
        return (
            f"vertex {self.vertex}: d_S={self.degree} interval=[{self.low}, "
            f"{self.high}] d_S mod {self.modulus}={self.residue} "
            f"targets={self.targets}"
        )


@dataclass(frozen=True)
class DCSResult:
    status: str
    edges: frozenset
    potential: int
    diagnostics: tuple
    method: str
    steps: int

    @property
    def ok(self):
        return self.status == FOUND


def degree_interval(d):
    """Integer degrees k with d/3 <= k <= 2d/3."""
    return (d + 2) // 3, (2 * d) // 3


def _cyclic(r, s, lam):
    return min((r - s) % lam, (s - r) % lam)


class _Costs:
    """
    Per-vertex cost of having degree k in S. potential() is the interval
    distance plus the residue distance. Calling the object gives the distance
    from k to the nearest allowed degree instead, which has no plateau at the
    interval ends; local search follows it. Both vanish exactly on allowed
    degrees.
    """

    def __init__(self, g, targets):
        if len(targets.a) != g.n:
            raise ParameterError(
                f"targets cover {len(targets.a)} vertices, graph has {g.n}"
            )
        self.degrees = g.degrees
        self.bounds = [degree_interval(d) for d in self.degrees]
        self.lam = targets.lam
        self.residues = [targets.residues(v) for v in range(g.n)]
        self.options = [self._allowed(v) for v in range(g.n)]

    def potential(self, v, k):
        low, high = self.bounds[v]
        lam = self.lam[v]
        r0, r1 = self.residues[v]
        r = k % lam
        return (
            max(0, low - k)
            + max(0, k - high)
            + min(_cyclic(r, r0, lam), _cyclic(r, r1, lam))
        )

    def __call__(self, v, k):
        options = self.options[v]
        if not options:
            return self.potential(v, k)
        i = bisect.bisect_left(options, k)
        return min(abs(k - x) for x in options[max(0, i - 1) : i + 1])

    def allowed(self, v):
        return self.options[v]

    def _allowed(self, v):
        low, high = self.bounds[v]
        return [
            k for k in range(low, high + 1) if k % self.lam[v] in self.residues[v]
        ]


def _degrees_in(g, s):
    deg = [0] * g.n
    for eid in s:
        u, v = g.endpoints(eid)
        deg[u] += 1
        deg[v] += 1
    return deg


def violation_potential(g, s, targets):
    """Sum over vertices of interval distance plus residue distance."""
    costs = _Costs(g, targets)
    return sum(costs.potential(v, k) for v, k in enumerate(_degrees_in(g, s)))


def verify_dcs(g, s, targets):
    """
    (ok, diagnostics): ok iff both conditions hold at every vertex. The
    interval test is the exact 3*d_S >= d and 3*d_S <= 2d.
    """
    for eid in s:
        if not 0 <= eid < g.m:
            raise UnknownEdgeError(eid, g.m)
    diagnostics = []
    degrees = g.degrees
    for v, k in enumerate(_degrees_in(g, s)):
        d = degrees[v]
        residues = targets.residues(v)
        in_interval = 3 * k >= d and 3 * k <= 2 * d
        if not in_interval or k % targets.lam[v] not in residues:
            low, high = degree_interval(d)
            diagnostics.append(
                VertexDiagnostic(
                    vertex=v,
                    degree=k,
                    low=low,
                    high=high,
                    residue=k % targets.lam[v],
                    targets=residues,
                    modulus=targets.lam[v],
                )
            )
    return not diagnostics, tuple(diagnostics)


def find_dcs(g, targets, budget=10**6, exact_threshold=30, seed=0, restarts=1):
    """Search a witness; see the module docstring for the strategy."""
    if budget < 1 or restarts < 1:
        raise ParameterError("budget and restarts must be positive")
    costs = _Costs(g, targets)

    stuck = [v for v in range(g.n) if not costs.allowed(v)]
    if stuck:
        logger.info(
            f"dcs: {len(stuck)} vertices have no allowed degree, first {stuck[0]}"
        )
        return _result(g, targets, PROVEN_INFEASIBLE, frozenset(), "exact", 0)

    if g.m <= exact_threshold:
        status, edges, nodes = _exact_search(g, costs, budget)
        if status == FOUND:
            return _certified(g, targets, edges, "exact", nodes)
        if status == PROVEN_INFEASIBLE:
            logger.info(f"dcs: exact search proved infeasibility ({nodes} nodes)")
            return _result(g, targets, status, frozenset(), "exact", nodes)
        logger.info(f"dcs: exact search ran out after {nodes} nodes")

    found, edges, steps = _local_search(g, costs, budget, seed, restarts)
    if found:
        return _certified(g, targets, edges, "local", steps)
    logger.info(f"dcs: local search exhausted {steps} steps")
    return _result(g, targets, BUDGET_EXHAUSTED, edges, "local", steps)


def _result(g, targets, status, edges, method, steps):
    _, diagnostics = verify_dcs(g, edges, targets)
    return DCSResult(
        status=status,
        edges=frozenset(edges),
        potential=violation_potential(g, edges, targets),
        diagnostics=diagnostics,
        method=method,
        steps=steps,
    )


def _certified(g, targets, edges, method, steps):
    ok, diagnostics = verify_dcs(g, edges, targets)
    if not ok:
        logger.error(f"dcs: {method} search produced an invalid witness")
        return _result(g, targets, BUDGET_EXHAUSTED, edges, method, steps)
    return DCSResult(
        status=FOUND,
        edges=frozenset(edges),
        potential=0,
        diagnostics=(),
        method=method,
        steps=steps,
    )


class _OutOfNodes(Exception):
    pass


def _exact_search(g, costs, budget):
    """
    Depth-first search over the edges in id order. After each decision the
    endpoints must still be able to reach an allowed degree with the edges
    left undecided at them.
    """
    allowed = [costs.allowed(v) for v in range(g.n)]
    if any(not options for options in allowed):
        return PROVEN_INFEASIBLE, frozenset(), 0
    middle = [options[len(options) // 2] for options in allowed]
    deg = [0] * g.n
    remaining = list(costs.degrees)
    chosen = []
    nodes = 0

    def reachable(v):
        options = allowed[v]
        i = bisect.bisect_left(options, deg[v])
        return i < len(options) and options[i] <= deg[v] + remaining[v]

    def descend(i):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _OutOfNodes
        if i == g.m:
            return True
        u, v = g.edges[i]
        remaining[u] -= 1
        remaining[v] -= 1
        include_first = deg[u] < middle[u] and deg[v] < middle[v]
        for include in (include_first, not include_first):
            if include:
                deg[u] += 1
                deg[v] += 1
                chosen.append(i)
            if reachable(u) and reachable(v) and descend(i + 1):
                return True
            if include:
                deg[u] -= 1
                deg[v] -= 1
                chosen.pop()
        remaining[u] += 1
        remaining[v] += 1
        return False

    if not all(reachable(v) for v in range(g.n)):
        return PROVEN_INFEASIBLE, frozenset(), 0
    try:
        found = descend(0)
    except _OutOfNodes:
        return BUDGET_EXHAUSTED, frozenset(), nodes
    if found:
        return FOUND, frozenset(chosen), nodes
    return PROVEN_INFEASIBLE, frozenset(), nodes


class _Violated:
    """Set of vertices with O(1) insert, delete and uniform choice."""

    def __init__(self):
        self.items = []
        self.index = {}

    def __bool__(self):
        return bool(self.items)

    def update(self, v, bad):
        if bad and v not in self.index:
            self.index[v] = len(self.items)
            self.items.append(v)
        elif not bad and v in self.index:
            i = self.index.pop(v)
            last = self.items.pop()
            if last != v:
                self.items[i] = last
                self.index[last] = i

    def choice(self, rng):
        return self.items[int(rng.integers(len(self.items)))]


def _local_search(g, costs, budget, seed, restarts):
    """Returns (found, best edge set, steps used)."""
    steps_each = max(1, budget // restarts)
    best_edges, best_total = frozenset(), None
    used = 0
    for restart, child_seed in enumerate(spawn_seeds(seed, restarts)):
        rng = make_rng(child_seed)
        found, edges, total, steps = _walk(g, costs, steps_each, rng)
        used += steps
        logger.debug(f"dcs: restart {restart} ended at distance {total}")
        if best_total is None or total < best_total:
            best_edges, best_total = edges, total
        if found:
            return True, edges, used
    return False, best_edges, used


def _walk(g, costs, steps, rng):
    """
    Each step takes a violated vertex v that is not blocked and looks for an
    improving alternating path from it. A vertex without one is blocked until
    the next accepted move. Once every violated vertex is blocked, the edges
    at one of them are shaken at random.
    """
    edges = g.edges
    adjacency = g.adjacency
    in_s = (rng.random(g.m) < 0.5).tolist()
    deg = [0] * g.n
    for eid, (u, v) in enumerate(edges):
        if in_s[eid]:
            deg[u] += 1
            deg[v] += 1
    cost = [costs(v, deg[v]) for v in range(g.n)]
    total = sum(cost)
    violated = _Violated()
    for v in range(g.n):
        violated.update(v, cost[v] > 0)
    best_total, best_state = total, list(in_s)
    blocked = set()

    def apply(changes):
        nonlocal total
        for eid in changes:
            u, v = edges[eid]
            delta = -1 if in_s[eid] else 1
            in_s[eid] = not in_s[eid]
            deg[u] += delta
            deg[v] += delta
        for eid in changes:
            for x in edges[eid]:
                new = costs(x, deg[x])
                total += new - cost[x]
                cost[x] = new
                violated.update(x, new > 0)

    for step in range(1, steps + 1):
        if not violated:
            return True, frozenset(e for e in range(g.m) if in_s[e]), 0, step
        candidates = [x for x in violated.items if x not in blocked]
        if not candidates:
            v = violated.choice(rng)
            shaken = [eid for _, eid in adjacency[v] if rng.random() < NOISE]
            apply(shaken or [adjacency[v][int(rng.integers(len(adjacency[v])))][1]])
            blocked.clear()
            continue
        v = candidates[int(rng.integers(len(candidates)))]
        path = _improving_path(v, adjacency, in_s, deg, cost, costs)
        if path is None:
            blocked.add(v)
            continue
        apply(path)
        blocked.clear()
        if total < best_total:
            best_total, best_state = total, list(in_s)

    if not violated:
        return True, frozenset(e for e in range(g.m) if in_s[e]), 0, steps
    return (
        False,
        frozenset(e for e in range(g.m) if best_state[e]),
        best_total,
        steps,
    )


def _improving_path(v, adjacency, in_s, deg, cost, costs):
    """
    Shortest alternating path from v whose edges leave and join S in turn,
    starting with the move that brings v closer to an allowed degree. Inner
    vertices keep their degree, so only v and the far end x change; the path
    is returned (as edge ids) once the two changes lower the total cost.
    Breadth-first over states (vertex, next change), so each state is
    expanded once.
    """
    for delta in (1, -1):
        gain = costs(v, deg[v] + delta) - cost[v]
        if gain >= 0:
            continue
        start = (v, delta)
        parent = {start: None}
        queue = deque([start])
        while queue:
            state = queue.popleft()
            x, change = state
            for u, eid in adjacency[x]:
                if in_s[eid] != (change < 0):
                    continue
                reached = (u, -change)
                if reached in parent:
                    continue
                parent[reached] = (state, eid)
                if u != v and gain + costs(u, deg[u] + change) - cost[u] < 0:
                    path = _trace(parent, reached)
                    if len(set(path)) == len(path):
                        return path
                queue.append(reached)
    return None


def _trace(parent, state):
    path = []
    while parent[state] is not None:
        state, eid = parent[state]
        path.append(eid)
    return path[::-1]
